//! Physical quantities written as a bare SI number or as `"<number> <unit>"`.
//!
//! Frequencies given in Hz (kHz, MHz, GHz, THz) are ordinary frequencies and
//! are converted to angular frequency, so `"5 GHz"` means ω = 2π·5·10⁹ rad/s.

use serde::de::{self, Deserializer, Visitor};
use serde::{Serialize, Serializer};
use std::f64::consts::PI;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Length,
    Time,
    AngularFrequency,
    Temperature,
    Force,
    TensionPerLength,
    Density,
    Dimensionless,
}

impl Dimension {
    pub fn describe(&self) -> &'static str {
        match self {
            Dimension::Length => "length (m, cm, mm, um, nm)",
            Dimension::Time => "time (s, ms, us, ns, ps)",
            Dimension::AngularFrequency => "angular frequency (rad/s, or Hz, kHz, MHz, GHz, THz)",
            Dimension::Temperature => "temperature (K, mK, uK)",
            Dimension::Force => "force (N, mN, uN)",
            Dimension::TensionPerLength => "tension per length (N/m)",
            Dimension::Density => "mass density (kg/m^3, g/cm^3)",
            Dimension::Dimensionless => "a plain number",
        }
    }
}

/// SI factor and dimension of a unit symbol.
pub fn unit(symbol: &str) -> Option<(Dimension, f64)> {
    use Dimension::*;
    let hz = 2.0 * PI;
    Some(match symbol {
        "m" => (Length, 1.0),
        "cm" => (Length, 1e-2),
        "mm" => (Length, 1e-3),
        "um" | "μm" => (Length, 1e-6),
        "nm" => (Length, 1e-9),
        "s" => (Time, 1.0),
        "ms" => (Time, 1e-3),
        "us" | "μs" => (Time, 1e-6),
        "ns" => (Time, 1e-9),
        "ps" => (Time, 1e-12),
        "rad/s" => (AngularFrequency, 1.0),
        "Hz" => (AngularFrequency, hz),
        "kHz" => (AngularFrequency, hz * 1e3),
        "MHz" => (AngularFrequency, hz * 1e6),
        "GHz" => (AngularFrequency, hz * 1e9),
        "THz" => (AngularFrequency, hz * 1e12),
        "K" => (Temperature, 1.0),
        "mK" => (Temperature, 1e-3),
        "uK" | "μK" => (Temperature, 1e-6),
        "N" => (Force, 1.0),
        "mN" => (Force, 1e-3),
        "uN" | "μN" => (Force, 1e-6),
        "N/m" => (TensionPerLength, 1.0),
        "kg/m^3" | "kg/m3" => (Density, 1.0),
        "g/cm^3" | "g/cm3" => (Density, 1e3),
        _ => return None,
    })
}

/// Splits `"10 cm"` or `"10cm"` into an SI value and the unit's dimension.
/// A bare number carries no dimension.
pub fn parse_quantity(text: &str) -> Result<(f64, Option<Dimension>), String> {
    let text = text.trim();
    if let Ok(v) = text.parse::<f64>() {
        return Ok((v, None));
    }
    let split = text
        .char_indices()
        .map(|(i, _)| i)
        .chain(std::iter::once(text.len()))
        .rev()
        .find(|&i| i > 0 && text[..i].trim_end().parse::<f64>().is_ok());
    let Some(i) = split else {
        return Err(format!("`{text}` is not a number"));
    };
    let number: f64 = text[..i].trim_end().parse().expect("prefix parsed above");
    let symbol = text[i..].trim();
    match unit(symbol) {
        Some((dim, factor)) => Ok((number * factor, Some(dim))),
        None => Err(format!("unknown unit `{symbol}` in `{text}`")),
    }
}

/// Parses `text` and checks the unit against `dim`.
pub fn parse_with_dimension(text: &str, dim: Dimension) -> Result<f64, String> {
    let (v, found) = parse_quantity(text)?;
    match found {
        Some(d) if d != dim => Err(format!("`{text}` is not a {}", dim.describe())),
        _ => Ok(v),
    }
}

struct QuantityVisitor(Option<Dimension>);

impl<'de> Visitor<'de> for QuantityVisitor {
    type Value = (f64, Option<Dimension>);

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self.0 {
            Some(d) => write!(f, "a number or a quoted {}", d.describe()),
            None => write!(f, "a number or a quoted quantity with unit"),
        }
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Self::Value, E> {
        Ok((v, None))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Self::Value, E> {
        Ok((v as f64, None))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Self::Value, E> {
        Ok((v as f64, None))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
        match self.0 {
            Some(d) => parse_with_dimension(v, d).map(|x| (x, Some(d))).map_err(E::custom),
            None => parse_quantity(v).map_err(E::custom),
        }
    }
}

fn quantity<'de, D: Deserializer<'de>>(d: D, dim: Dimension) -> Result<f64, D::Error> {
    d.deserialize_any(QuantityVisitor(Some(dim))).map(|(v, _)| v)
}

macro_rules! dimension_fns {
    ($($name:ident, $opt:ident => $dim:ident;)*) => {$(
        pub fn $name<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
            quantity(d, Dimension::$dim)
        }

        pub fn $opt<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
            quantity(d, Dimension::$dim).map(Some)
        }
    )*};
}

dimension_fns! {
    length, opt_length => Length;
    time, opt_time => Time;
    frequency, opt_frequency => AngularFrequency;
    temperature, opt_temperature => Temperature;
    force, opt_force => Force;
    tension_per_length, opt_tension_per_length => TensionPerLength;
    density, opt_density => Density;
    number, opt_number => Dimensionless;
}

/// A value whose dimension is only known from context (sweep values).
#[derive(Debug, Clone, Copy)]
pub struct Quantity {
    pub value: f64,
    pub dimension: Option<Dimension>,
}

impl PartialEq for Quantity {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(self.value)
    }
}

impl<'de> serde::Deserialize<'de> for Quantity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (value, dimension) = d.deserialize_any(QuantityVisitor(None))?;
        Ok(Quantity { value, dimension })
    }
}

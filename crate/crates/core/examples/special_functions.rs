//! Upper incomplete gamma Γ(s, z) for integer s ≤ 1, the exponential
//! integral E₁ and the thermal factor coth(x/2).

use dephasure::specfun::{
    coth_half, exp_integral_e1, exp_integral_e1_continued_fraction, exp_integral_e1_series, upper_incomplete_gamma,
};
use dephasure::Complex64;

fn main() -> dephasure::Result<()> {
    println!("{:>24} {:>24} {:>24}", "z", "E1 series", "E1 continued fraction");
    for z in [
        Complex64::new(0.5, 0.0),
        Complex64::new(2.0, 3.0),
        Complex64::new(4.0, -1.0),
        Complex64::new(3.0, 2.5),
    ] {
        let cf = exp_integral_e1_continued_fraction(z)?;
        println!("{:>24} {:>24.15e} {:>24.15e}", format!("{z}"), exp_integral_e1_series(z).re, cf.re);
    }

    // recurrence Γ(s+1, z) = sΓ(s, z) + z^s e^{−z}
    let z = Complex64::new(1e-2, 30.0);
    for s in -3..=0 {
        let lhs = upper_incomplete_gamma(s + 1, z)?;
        let rhs = f64::from(s) * upper_incomplete_gamma(s, z)? + z.powi(s) * (-z).exp();
        println!("Gamma({}, z) residual {:.2e}", s + 1, ((lhs - rhs) / lhs).norm());
    }

    // far from the origin only the continued fraction is used
    println!("E1(1) = {:.12}", exp_integral_e1(Complex64::new(1.0, 0.0))?.re);
    println!("E1(1e-3 + 1e3 i) = {:.12e}", exp_integral_e1(Complex64::new(1e-3, 1e3))?);
    for x in [1e-4, 2.0, 50.0, 1e3] {
        println!("coth({x}/2) = {:.12}", coth_half(x)?);
    }
    Ok(())
}

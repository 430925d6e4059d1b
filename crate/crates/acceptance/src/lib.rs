//! Holds the `acceptance` test target; run it with
//! `cargo test --release -p dephasure-acceptance --test acceptance`.

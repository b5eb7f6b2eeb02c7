//! Exact arithmetic kernel.

mod coeff;
mod complex;
mod etale;
mod hbar;
mod mpoly;
mod poly;
mod series;

pub use coeff::{rat, rat_int, rat_to_string, Coeff, Invertible, Rat};
pub use complex::{FixedComplex, FRAC_BITS};
pub use etale::{EtaleElem, Modulus, SplitEvent};
pub use hbar::{falling_factorial_neg_inv_hbar, HbarPoly};
pub use mpoly::{Monomial, MPoly, MAX_VARS};
pub use poly::Poly;
pub use series::{lagrange_invert, TruncSeries};

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

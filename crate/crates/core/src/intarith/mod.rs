//! Integer utilities: primality, valuations, radicals, bounded factoring
//! and three-valued squarefreeness.

mod factor;
mod prime;
mod squarefree;

pub use factor::{factor_bounded, radical, radical_u64, valuation, FactorBudget, Factorization};
pub(crate) use prime::{mul_mod, pow_mod};
pub use prime::{is_prime_u64, is_probable_prime, perfect_power, primes_up_to, small_prime_divisors};
pub use squarefree::{squarefree_status, SquarefreeStatus, SquarefreeVerdict};

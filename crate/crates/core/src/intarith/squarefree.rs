use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::Serialize;

use super::factor::{factor_bounded, FactorBudget};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SquarefreeVerdict {
    Squarefree,
    /// `witness^2` divides the input. The witness is prime unless it came
    /// from a perfect-power cofactor whose root could not be split.
    NotSquarefree {
        #[serde(serialize_with = "crate::decimal::string")]
        witness: BigUint,
    },
    /// The unsplit cofactor, larger than `trial_bound^2` and not a perfect power.
    Unknown {
        #[serde(serialize_with = "crate::decimal::string")]
        cofactor: BigUint,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquarefreeStatus {
    #[serde(flatten)]
    pub verdict: SquarefreeVerdict,
    pub effort: FactorBudget,
}

impl SquarefreeStatus {
    /// `Some(true)` / `Some(false)` when decided, `None` when unknown.
    pub fn decided(&self) -> Option<bool> {
        match self.verdict {
            SquarefreeVerdict::Squarefree => Some(true),
            SquarefreeVerdict::NotSquarefree { .. } => Some(false),
            SquarefreeVerdict::Unknown { .. } => None,
        }
    }
}

pub fn squarefree_status(n: &BigInt, budget: &FactorBudget) -> Result<SquarefreeStatus> {
    let f = factor_bounded(n, budget)?;
    let repeated = f.primes.iter().chain(&f.unfactored).filter(|(_, e)| *e >= 2);
    let verdict = if let Some((w, _)) = repeated.min_by(|x, y| x.0.cmp(&y.0)) {
        SquarefreeVerdict::NotSquarefree { witness: w.clone() }
    } else if f.is_complete() {
        SquarefreeVerdict::Squarefree
    } else {
        SquarefreeVerdict::Unknown { cofactor: f.cofactor() }
    };
    debug_assert!(match &verdict {
        SquarefreeVerdict::NotSquarefree { witness } =>
            (n.magnitude() % (witness * witness)) == BigUint::ZERO && !witness.is_one(),
        _ => true,
    });
    Ok(SquarefreeStatus { verdict, effort: *budget })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use num_traits::Zero;

    fn status(n: i64) -> SquarefreeVerdict {
        squarefree_status(&n.into(), &FactorBudget::default()).unwrap().verdict
    }

    #[test]
    fn examples() {
        assert_eq!(status(1830), SquarefreeVerdict::Squarefree);
        assert_eq!(status(-96746), SquarefreeVerdict::NotSquarefree { witness: 61u32.into() });
        assert_eq!(status(-95126), SquarefreeVerdict::Squarefree);
        assert_eq!(status(539), SquarefreeVerdict::NotSquarefree { witness: 7u32.into() });
        assert_eq!(status(1), SquarefreeVerdict::Squarefree);
        assert_eq!(
            squarefree_status(&BigInt::zero(), &FactorBudget::default()),
            Err(Error::ZeroInteger)
        );
    }

    #[test]
    fn unknown_when_budget_runs_out() {
        let budget = FactorBudget { trial_bound: 10, rho_budget: 0 };
        let n = BigInt::from(1_000_003u64 * 1_000_033);
        let s = squarefree_status(&n, &budget).unwrap();
        assert_eq!(s.decided(), None);
        assert_eq!(s.effort, budget);
    }

    #[test]
    fn large_square_factor_found() {
        let p = BigInt::from(1_000_000_007u64);
        let n = &p * &p * BigInt::from(6);
        assert_eq!(
            squarefree_status(&n, &FactorBudget::default()).unwrap().verdict,
            SquarefreeVerdict::NotSquarefree { witness: 1_000_000_007u64.into() }
        );
    }
}

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which branch of the mirror theorem a bundle falls into.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Case {
    /// `J_V = I_V`: no change of variables.
    TrivialMap,
    /// Exactly one negative summand and `sum k + sum l = s + 1`.
    MapNeeded,
    /// Hypotheses fail (no negative summand, or `sum k + sum l > s + 1`).
    OutOfScope,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::TrivialMap => "TRIVIAL_MAP",
            Case::MapNeeded => "MAP_NEEDED",
            Case::OutOfScope => "OUT_OF_SCOPE",
        })
    }
}

/// `V = (⊕ O(k_i)) ⊕ (⊕ O(-l_j))` on `P^s`.
#[derive(Clone, PartialEq, Eq, Debug, Hash, Serialize, Deserialize)]
pub struct BundleSpec {
    s: usize,
    #[serde(rename = "k")]
    kdegs: Vec<u32>,
    #[serde(rename = "l")]
    ldegs: Vec<u32>,
}

impl BundleSpec {
    pub fn new(s: usize, kdegs: Vec<u32>, ldegs: Vec<u32>) -> Result<Self> {
        if s < 1 {
            return Err(Error::InvalidBundle("ambient dimension must be at least 1".into()));
        }
        if kdegs.iter().chain(&ldegs).any(|&x| x == 0) {
            return Err(Error::InvalidBundle("line bundle degrees must be at least 1".into()));
        }
        Ok(BundleSpec { s, kdegs, ldegs })
    }

    /// `O(-1) ⊕ O(-1)` on `P^1`.
    pub fn aspinwall_morrison() -> Self {
        BundleSpec { s: 1, kdegs: vec![], ldegs: vec![1, 1] }
    }

    /// `O(-3)` on `P^2`.
    pub fn local_p2() -> Self {
        BundleSpec { s: 2, kdegs: vec![], ldegs: vec![3] }
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn kdegs(&self) -> &[u32] {
        &self.kdegs
    }

    pub fn ldegs(&self) -> &[u32] {
        &self.ldegs
    }

    pub fn degree_sum(&self) -> u64 {
        self.kdegs.iter().chain(&self.ldegs).map(|&x| x as u64).sum()
    }

    pub fn classification(&self) -> Case {
        let total = self.degree_sum();
        let bound = self.s as u64 + 1;
        if self.ldegs.is_empty() || total > bound {
            Case::OutOfScope
        } else if self.ldegs.len() == 1 && total == bound {
            Case::MapNeeded
        } else {
            Case::TrivialMap
        }
    }

    /// Names the failed hypothesis for out-of-scope bundles.
    pub fn require_in_scope(&self) -> Result<Case> {
        let bound = self.s as u64 + 1;
        if self.ldegs.is_empty() {
            return Err(Error::HypothesisViolation(
                "no negative summand: the convex case is not covered".into(),
            ));
        }
        if self.degree_sum() > bound {
            return Err(Error::HypothesisViolation(format!(
                "sum k + sum l = {} > s + 1 = {bound}",
                self.degree_sum()
            )));
        }
        Ok(self.classification())
    }
}

impl fmt::Display for BundleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .kdegs
            .iter()
            .map(|k| format!("O({k})"))
            .chain(self.ldegs.iter().map(|l| format!("O(-{l})")))
            .collect();
        let bundle = if parts.is_empty() { "0".to_string() } else { parts.join("+") };
        write!(f, "{bundle} on P^{}", self.s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification() {
        assert_eq!(BundleSpec::aspinwall_morrison().classification(), Case::TrivialMap);
        assert_eq!(BundleSpec::local_p2().classification(), Case::MapNeeded);
        let k1l2 = BundleSpec::new(2, vec![1], vec![2]).unwrap();
        assert_eq!(k1l2.classification(), Case::MapNeeded);
        let small = BundleSpec::new(4, vec![2], vec![1]).unwrap();
        assert_eq!(small.classification(), Case::TrivialMap);
        let convex = BundleSpec::new(4, vec![5], vec![]).unwrap();
        assert_eq!(convex.classification(), Case::OutOfScope);
        let big = BundleSpec::new(2, vec![], vec![3, 1]).unwrap();
        assert_eq!(big.classification(), Case::OutOfScope);
        let err = big.require_in_scope().unwrap_err();
        assert!(err.to_string().contains("4 > s + 1 = 3"), "{err}");
    }

    #[test]
    fn validation() {
        assert!(BundleSpec::new(0, vec![], vec![1]).is_err());
        assert!(BundleSpec::new(2, vec![0], vec![1]).is_err());
        assert_eq!(BundleSpec::new(2, vec![1], vec![2]).unwrap().to_string(), "O(1)+O(-2) on P^2");
    }
}

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubsystemKind {
    /// Three-level atom with basis order `(g, e, i)`.
    Atom3,
    /// Field mode truncated to Fock states `0..=n_max`.
    Mode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubsystemSpec {
    pub kind: SubsystemKind,
    pub dimension: usize,
}

impl SubsystemSpec {
    pub const fn atom() -> Self {
        Self {
            kind: SubsystemKind::Atom3,
            dimension: 3,
        }
    }

    /// Mode holding up to `n_max` photons.
    pub const fn mode(n_max: usize) -> Self {
        Self {
            kind: SubsystemKind::Mode,
            dimension: n_max + 1,
        }
    }

    fn validate(&self) -> Result<()> {
        match self.kind {
            SubsystemKind::Atom3 if self.dimension != 3 => Err(Error::InvalidRegister(format!(
                "an atom has dimension 3, got {}",
                self.dimension
            ))),
            SubsystemKind::Mode if self.dimension < 2 => Err(Error::InvalidRegister(format!(
                "a mode needs dimension >= 2, got {}",
                self.dimension
            ))),
            _ => Ok(()),
        }
    }
}

/// Ordered tensor-product register with row-major index arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegisterLayout {
    subsystems: Vec<SubsystemSpec>,
    strides: Vec<usize>,
    total: usize,
}

pub fn make_register(specs: &[SubsystemSpec]) -> Result<RegisterLayout> {
    RegisterLayout::new(specs.to_vec())
}

impl RegisterLayout {
    pub fn new(subsystems: Vec<SubsystemSpec>) -> Result<Self> {
        if subsystems.is_empty() {
            return Err(Error::InvalidRegister("register has no subsystems".into()));
        }
        for s in &subsystems {
            s.validate()?;
        }
        let mut strides = vec![1; subsystems.len()];
        for k in (0..subsystems.len() - 1).rev() {
            strides[k] = strides[k + 1] * subsystems[k + 1].dimension;
        }
        let total = strides[0] * subsystems[0].dimension;
        Ok(Self {
            subsystems,
            strides,
            total,
        })
    }

    pub fn total_dimension(&self) -> usize {
        self.total
    }

    pub fn len(&self) -> usize {
        self.subsystems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsystems.is_empty()
    }

    pub fn subsystems(&self) -> &[SubsystemSpec] {
        &self.subsystems
    }

    pub fn dim(&self, k: usize) -> usize {
        self.subsystems[k].dimension
    }

    pub fn stride(&self, k: usize) -> usize {
        self.strides[k]
    }

    /// Flat index of a digit tuple. Panics on a wrong-length tuple or an
    /// out-of-range digit.
    pub fn flat_index(&self, digits: &[usize]) -> usize {
        assert_eq!(digits.len(), self.len(), "digit tuple length");
        digits
            .iter()
            .zip(&self.subsystems)
            .zip(&self.strides)
            .map(|((&d, s), &st)| {
                assert!(d < s.dimension, "digit {d} out of range");
                d * st
            })
            .sum()
    }

    pub fn digits(&self, index: usize) -> Vec<usize> {
        (0..self.len()).map(|k| self.digit(index, k)).collect()
    }

    pub fn digit(&self, index: usize, k: usize) -> usize {
        (index / self.strides[k]) % self.subsystems[k].dimension
    }

    pub(crate) fn check_targets(&self, targets: &[usize]) -> Result<()> {
        if targets.is_empty() {
            return Err(Error::InvalidParameter("empty target list".into()));
        }
        for (n, &t) in targets.iter().enumerate() {
            if t >= self.len() {
                return Err(Error::TargetOutOfRange {
                    index: t,
                    len: self.len(),
                });
            }
            if targets[..n].contains(&t) {
                return Err(Error::InvalidParameter(format!("subsystem {t} listed twice")));
            }
        }
        Ok(())
    }

    /// Product of the dimensions of `targets`.
    pub fn local_dimension(&self, targets: &[usize]) -> usize {
        targets.iter().map(|&t| self.dim(t)).product()
    }

    /// Flat offset of each local basis state of `targets`, with the local
    /// index itself row-major in the order the targets are listed.
    pub(crate) fn offsets(&self, targets: &[usize]) -> Vec<usize> {
        let mut offs = vec![0usize];
        for &t in targets {
            let d = self.dim(t);
            let st = self.strides[t];
            offs = offs
                .iter()
                .flat_map(|&o| (0..d).map(move |v| o + v * st))
                .collect();
        }
        offs
    }

    /// Flat indices whose digits on `targets` are all zero.
    pub(crate) fn bases(&self, targets: &[usize]) -> Vec<usize> {
        (0..self.total)
            .filter(|&ix| targets.iter().all(|&t| self.digit(ix, t) == 0))
            .collect()
    }

    /// Layout of the listed subsystems, in the listed order.
    pub fn sub_layout(&self, keep: &[usize]) -> Result<RegisterLayout> {
        self.check_targets(keep)?;
        RegisterLayout::new(keep.iter().map(|&k| self.subsystems[k]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_atom() {
        let l = make_register(&[SubsystemSpec::atom()]).unwrap();
        assert_eq!(l.total_dimension(), 3);
        let l = make_register(&[SubsystemSpec::mode(1)]).unwrap();
        assert_eq!(l.total_dimension(), 2);
    }

    #[test]
    fn protocol_register_matches_enumeration() {
        let mut specs = vec![SubsystemSpec::atom(); 4];
        specs.extend([SubsystemSpec::mode(2); 2]);
        let l = make_register(&specs).unwrap();
        assert_eq!(l.total_dimension(), 729);

        // nested-loop enumeration, last digit fastest
        let mut flat = 0;
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    for d in 0..3 {
                        for m in 0..3 {
                            for n in 0..3 {
                                let t = [a, b, c, d, m, n];
                                assert_eq!(l.flat_index(&t), flat);
                                assert_eq!(l.digits(flat), t);
                                flat += 1;
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(make_register(&[]).is_err());
        assert!(make_register(&[SubsystemSpec::mode(0)]).is_err());
        let bad_atom = SubsystemSpec {
            kind: SubsystemKind::Atom3,
            dimension: 2,
        };
        assert!(make_register(&[bad_atom]).is_err());
    }

    #[test]
    fn offsets_follow_target_order() {
        let l = make_register(&[SubsystemSpec::atom(), SubsystemSpec::mode(1)]).unwrap();
        assert_eq!(l.offsets(&[0, 1]), vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(l.offsets(&[1, 0]), vec![0, 2, 4, 1, 3, 5]);
        assert_eq!(l.bases(&[0]), vec![0, 1]);
    }
}

use super::matrix::{is_unitary, kraus_completeness_error, Matrix, C64};
use super::register::RegisterLayout;
use super::EXACT_TOL;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum OperatorKind {
    Unitary(Matrix),
    KrausSet(Vec<Matrix>),
}

/// An operator acting on an ordered subset of register subsystems.
///
/// The local matrix is indexed row-major over `targets` in the order they
/// are listed, independent of where they sit in the register.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalOperator {
    targets: Vec<usize>,
    kind: OperatorKind,
}

impl LocalOperator {
    pub fn unitary(targets: Vec<usize>, matrix: Matrix) -> Result<Self> {
        if !is_unitary(&matrix, EXACT_TOL) {
            return Err(Error::InvalidOperator("matrix is not unitary within 1e-12".into()));
        }
        Ok(Self {
            targets,
            kind: OperatorKind::Unitary(matrix),
        })
    }

    pub fn kraus(targets: Vec<usize>, ops: Vec<Matrix>) -> Result<Self> {
        if ops.is_empty() {
            return Err(Error::InvalidOperator("empty Kraus set".into()));
        }
        let side = ops[0].nrows();
        if ops.iter().any(|k| k.dim() != (side, side)) {
            return Err(Error::InvalidOperator("Kraus operators must share one square shape".into()));
        }
        let err = kraus_completeness_error(&ops);
        if err >= EXACT_TOL {
            return Err(Error::InvalidOperator(format!(
                "Kraus set is not trace preserving (deviation {err:.2e})"
            )));
        }
        Ok(Self {
            targets,
            kind: OperatorKind::KrausSet(ops),
        })
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn kind(&self) -> &OperatorKind {
        &self.kind
    }

    pub fn side(&self) -> usize {
        match &self.kind {
            OperatorKind::Unitary(m) => m.nrows(),
            OperatorKind::KrausSet(ks) => ks[0].nrows(),
        }
    }

    pub(crate) fn check_against(&self, layout: &RegisterLayout) -> Result<()> {
        layout.check_targets(&self.targets)?;
        let expected = layout.local_dimension(&self.targets);
        if expected != self.side() {
            return Err(Error::DimensionMismatch {
                expected,
                found: self.side(),
            });
        }
        Ok(())
    }
}

/// Nonzero entries of a local matrix together with the index plan for
/// embedding it into a register.
pub(crate) struct Embedded {
    entries: Vec<(usize, usize, C64)>,
    offsets: Vec<usize>,
    bases: Vec<usize>,
    identity: bool,
}

impl Embedded {
    pub(crate) fn new(layout: &RegisterLayout, targets: &[usize], m: &Matrix) -> Self {
        let n = m.nrows();
        let mut entries = Vec::new();
        let mut identity = true;
        for r in 0..n {
            for c in 0..n {
                let v = m[[r, c]];
                let expect = if r == c { 1.0 } else { 0.0 };
                if v != C64::new(expect, 0.0) {
                    identity = false;
                }
                if v != C64::new(0.0, 0.0) {
                    entries.push((r, c, v));
                }
            }
        }
        Self {
            entries,
            offsets: layout.offsets(targets),
            bases: layout.bases(targets),
            identity,
        }
    }

    fn conj(&self) -> Self {
        Self {
            entries: self.entries.iter().map(|&(r, c, v)| (r, c, v.conj())).collect(),
            offsets: self.offsets.clone(),
            bases: self.bases.clone(),
            identity: self.identity,
        }
    }

    fn apply_slice(&self, data: &mut [C64], buf: &mut [C64]) {
        let n = self.offsets.len();
        for &b in &self.bases {
            for l in 0..n {
                buf[l] = data[b + self.offsets[l]];
            }
            for r in 0..n {
                data[b + self.offsets[r]] = C64::new(0.0, 0.0);
            }
            for &(r, c, v) in &self.entries {
                data[b + self.offsets[r]] += v * buf[c];
            }
        }
    }

    pub(crate) fn apply_vector(&self, amps: &mut [C64]) {
        if self.identity {
            return;
        }
        let mut buf = vec![C64::new(0.0, 0.0); self.offsets.len()];
        self.apply_slice(amps, &mut buf);
    }

    /// `ρ ← (M ⊗ I) ρ (M ⊗ I)†` on a row-major square buffer of side `dim`.
    pub(crate) fn conjugate_density(&self, rho: &mut [C64], dim: usize) {
        if self.identity {
            return;
        }
        let mut buf = vec![C64::new(0.0, 0.0); self.offsets.len()];
        let n = self.offsets.len();
        for &b in &self.bases {
            for c in 0..dim {
                for l in 0..n {
                    buf[l] = rho[(b + self.offsets[l]) * dim + c];
                }
                for r in 0..n {
                    rho[(b + self.offsets[r]) * dim + c] = C64::new(0.0, 0.0);
                }
                for &(r, l, v) in &self.entries {
                    rho[(b + self.offsets[r]) * dim + c] += v * buf[l];
                }
            }
        }
        // rows: right multiplication by M†, i.e. conj(M) acting on each row
        let conj = self.conj();
        for row in rho.chunks_mut(dim) {
            conj.apply_slice(row, &mut buf);
        }
    }
}

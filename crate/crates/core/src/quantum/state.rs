use ndarray::Array2;

use super::matrix::{hermitian_eigenvalues, kron, Matrix, Vector, C64};
use super::operator::{Embedded, LocalOperator, OperatorKind};
use super::register::RegisterLayout;
use super::{EXACT_TOL, INPUT_TOL};
use crate::{Error, Result};

/// Normalised amplitude vector over a register.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    layout: RegisterLayout,
    amps: Vector,
}

/// Hermitian, positive, unit-trace matrix over a register.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityState {
    layout: RegisterLayout,
    matrix: Matrix,
}

/// Kronecker product of one normalised local vector per subsystem.
pub fn product_state(layout: &RegisterLayout, locals: &[Vector]) -> Result<PureState> {
    if locals.len() != layout.len() {
        return Err(Error::DimensionMismatch {
            expected: layout.len(),
            found: locals.len(),
        });
    }
    let mut amps = Vector::from_elem(1, C64::new(1.0, 0.0));
    for (k, v) in locals.iter().enumerate() {
        if v.len() != layout.dim(k) {
            return Err(Error::DimensionMismatch {
                expected: layout.dim(k),
                found: v.len(),
            });
        }
        let norm = vector_norm(v);
        if (norm - 1.0).abs() > INPUT_TOL {
            return Err(Error::NotNormalized {
                what: "local state",
                norm,
            });
        }
        amps = amps
            .iter()
            .flat_map(|&a| v.iter().map(move |&b| a * b))
            .collect();
    }
    Ok(PureState {
        layout: layout.clone(),
        amps,
    })
}

/// `⟨ψ|ρ|ψ⟩`.
pub fn fidelity_pure(rho: &DensityState, psi: &PureState) -> Result<f64> {
    rho.expectation(psi.amplitudes())
}

fn vector_norm(v: &Vector) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// For every flat index: (position within the kept subsystems, position within the rest).
fn split_indices(layout: &RegisterLayout, keep: &[usize]) -> (Vec<Vec<usize>>, usize) {
    let rest: Vec<usize> = (0..layout.len()).filter(|k| !keep.contains(k)).collect();
    let d_keep = layout.local_dimension(keep);
    let d_rest: usize = rest.iter().map(|&k| layout.dim(k)).product();
    let mut table = vec![vec![0usize; d_keep]; d_rest];
    for ix in 0..layout.total_dimension() {
        let kept = keep
            .iter()
            .fold(0, |acc, &k| acc * layout.dim(k) + layout.digit(ix, k));
        let other = rest
            .iter()
            .fold(0, |acc, &k| acc * layout.dim(k) + layout.digit(ix, k));
        table[other][kept] = ix;
    }
    (table, d_keep)
}

fn sorted_keep(layout: &RegisterLayout, keep: &[usize]) -> Result<Vec<usize>> {
    layout.check_targets(keep)?;
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    Ok(keep)
}

impl PureState {
    pub fn new(layout: RegisterLayout, amps: Vector) -> Result<Self> {
        if amps.len() != layout.total_dimension() {
            return Err(Error::DimensionMismatch {
                expected: layout.total_dimension(),
                found: amps.len(),
            });
        }
        let norm = vector_norm(&amps);
        if (norm - 1.0).abs() > INPUT_TOL {
            return Err(Error::NotNormalized { what: "state", norm });
        }
        Ok(Self { layout, amps })
    }

    pub fn basis(layout: &RegisterLayout, digits: &[usize]) -> Self {
        let mut amps = Vector::zeros(layout.total_dimension());
        amps[layout.flat_index(digits)] = C64::new(1.0, 0.0);
        Self {
            layout: layout.clone(),
            amps,
        }
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn amplitudes(&self) -> &Vector {
        &self.amps
    }

    pub fn amplitude(&self, digits: &[usize]) -> C64 {
        self.amps[self.layout.flat_index(digits)]
    }

    pub fn norm(&self) -> f64 {
        vector_norm(&self.amps)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &PureState) -> Result<C64> {
        if self.layout != other.layout {
            return Err(Error::DimensionMismatch {
                expected: self.layout.total_dimension(),
                found: other.layout.total_dimension(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Total probability of basis states whose digit tuple satisfies `pred`.
    pub fn population(&self, pred: impl Fn(&[usize]) -> bool) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .filter(|(ix, _)| pred(&self.layout.digits(*ix)))
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// Unnormalised vector `⟨φ|_targets ψ⟩` over the remaining subsystems
    /// (register order), together with their layout. `local` is indexed
    /// row-major over `targets` in the listed order.
    pub fn conditional(&self, targets: &[usize], local: &Vector) -> Result<(RegisterLayout, Vector)> {
        self.layout.check_targets(targets)?;
        let d = self.layout.local_dimension(targets);
        if local.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: local.len(),
            });
        }
        let rest: Vec<usize> = (0..self.layout.len()).filter(|k| !targets.contains(k)).collect();
        if rest.is_empty() {
            return Err(Error::InvalidParameter("no subsystems left after conditioning".into()));
        }
        let rest_layout = self.layout.sub_layout(&rest)?;
        let mut out = Vector::zeros(rest_layout.total_dimension());
        for (ix, a) in self.amps.iter().enumerate() {
            let l = targets
                .iter()
                .fold(0, |acc, &k| acc * self.layout.dim(k) + self.layout.digit(ix, k));
            let r = rest
                .iter()
                .fold(0, |acc, &k| acc * self.layout.dim(k) + self.layout.digit(ix, k));
            out[r] += local[l].conj() * a;
        }
        Ok((rest_layout, out))
    }

    /// `|ψ⟩ ← (U ⊗ I)|ψ⟩`. Kraus sets are rejected.
    pub fn apply(&mut self, op: &LocalOperator) -> Result<()> {
        op.check_against(&self.layout)?;
        let OperatorKind::Unitary(u) = op.kind() else {
            return Err(Error::InvalidOperator(
                "a Kraus set cannot act on a pure state".into(),
            ));
        };
        let emb = Embedded::new(&self.layout, op.targets(), u);
        emb.apply_vector(self.amps.as_slice_mut().expect("contiguous amplitudes"));
        Ok(())
    }

    pub fn to_density(&self) -> DensityState {
        let n = self.amps.len();
        let matrix = Array2::from_shape_fn((n, n), |(r, c)| self.amps[r] * self.amps[c].conj());
        DensityState {
            layout: self.layout.clone(),
            matrix,
        }
    }

    /// Reduced state of `keep`, in register order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityState> {
        let keep = sorted_keep(&self.layout, keep)?;
        let (table, d) = split_indices(&self.layout, &keep);
        let mut m = Matrix::zeros((d, d));
        for row in &table {
            for r in 0..d {
                let a = self.amps[row[r]];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..d {
                    m[[r, c]] += a * self.amps[row[c]].conj();
                }
            }
        }
        Ok(DensityState {
            layout: self.layout.sub_layout(&keep)?,
            matrix: m,
        })
    }
}

impl DensityState {
    /// Validating constructor: Hermitian and unit trace within 1e-12,
    /// eigenvalues ≥ −1e-10.
    pub fn new(layout: RegisterLayout, matrix: Matrix) -> Result<Self> {
        let n = layout.total_dimension();
        if matrix.dim() != (n, n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: matrix.nrows(),
            });
        }
        let s = Self { layout, matrix };
        s.validate(EXACT_TOL, EXACT_TOL, 1e-10)?;
        Ok(s)
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn trace(&self) -> C64 {
        self.matrix.diag().sum()
    }

    pub fn hermiticity_error(&self) -> f64 {
        let n = self.matrix.nrows();
        let mut worst: f64 = 0.0;
        for r in 0..n {
            for c in r..n {
                worst = worst.max((self.matrix[[r, c]] - self.matrix[[c, r]].conj()).norm());
            }
        }
        worst
    }

    pub fn min_eigenvalue(&self) -> f64 {
        hermitian_eigenvalues(&self.matrix)[0]
    }

    pub fn validate(&self, herm_tol: f64, trace_tol: f64, eig_tol: f64) -> Result<()> {
        let h = self.hermiticity_error();
        if h > herm_tol {
            return Err(Error::Invariant(format!("density matrix not Hermitian ({h:.2e})")));
        }
        let t = self.trace();
        if (t - C64::new(1.0, 0.0)).norm() > trace_tol {
            return Err(Error::NotNormalized {
                what: "density matrix",
                norm: t.re,
            });
        }
        let ev = self.min_eigenvalue();
        if ev < -eig_tol {
            return Err(Error::Invariant(format!("negative eigenvalue {ev:.2e}")));
        }
        Ok(())
    }

    pub fn purity(&self) -> f64 {
        self.matrix.dot(&self.matrix).diag().sum().re
    }

    /// `⟨v|ρ|v⟩` for a vector over the same register.
    pub fn expectation(&self, v: &Vector) -> Result<f64> {
        if v.len() != self.matrix.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.matrix.nrows(),
                found: v.len(),
            });
        }
        let z: C64 = v.mapv(|x| x.conj()).dot(&self.matrix.dot(v));
        if z.im.abs() > 1e-9 {
            return Err(Error::Invariant(format!(
                "expectation value has imaginary part {:.2e}",
                z.im
            )));
        }
        Ok(z.re)
    }

    pub fn population(&self, pred: impl Fn(&[usize]) -> bool) -> f64 {
        (0..self.matrix.nrows())
            .filter(|&ix| pred(&self.layout.digits(ix)))
            .map(|ix| self.matrix[[ix, ix]].re)
            .sum()
    }

    /// `ρ ← Σ_k K ρ K†` (a unitary is a single Kraus element).
    pub fn apply(&mut self, op: &LocalOperator) -> Result<()> {
        op.check_against(&self.layout)?;
        let n = self.matrix.nrows();
        match op.kind() {
            OperatorKind::Unitary(u) => {
                let emb = Embedded::new(&self.layout, op.targets(), u);
                emb.conjugate_density(self.slice_mut(), n);
            }
            OperatorKind::KrausSet(ks) => {
                let mut acc = Matrix::zeros((n, n));
                for k in ks {
                    let mut term = self.matrix.clone();
                    let emb = Embedded::new(&self.layout, op.targets(), k);
                    emb.conjugate_density(term.as_slice_mut().expect("contiguous"), n);
                    acc += &term;
                }
                self.matrix = acc;
            }
        }
        Ok(())
    }

    fn slice_mut(&mut self) -> &mut [C64] {
        self.matrix
            .as_slice_mut()
            .expect("density matrix is stored contiguously")
    }

    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityState> {
        let keep = sorted_keep(&self.layout, keep)?;
        let (table, d) = split_indices(&self.layout, &keep);
        let mut m = Matrix::zeros((d, d));
        for row in &table {
            for r in 0..d {
                for c in 0..d {
                    m[[r, c]] += self.matrix[[row[r], row[c]]];
                }
            }
        }
        Ok(DensityState {
            layout: self.layout.sub_layout(&keep)?,
            matrix: m,
        })
    }

    /// `self ⊗ other`, with `other`'s subsystems appended after ours.
    pub fn tensor(&self, other: &DensityState) -> Result<DensityState> {
        let mut specs = self.layout.subsystems().to_vec();
        specs.extend_from_slice(other.layout.subsystems());
        Ok(DensityState {
            layout: RegisterLayout::new(specs)?,
            matrix: kron(&self.matrix, &other.matrix),
        })
    }
}

//! States, observables with spectral projectors, two-stage evolution and
//! complete pre/post-selection scenarios.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::{
    hermitian_eig_with, unitary_from_hamiltonian, ComplexMatrix, ComplexVector, EigenDecomposition,
};
use crate::tolerance::Tolerances;

/// A normalized pure state |ψ⟩.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    vector: ComplexVector,
}

impl Ket {
    /// Accepts states within 1e-6 of unit norm, renormalizing them when the
    /// deviation is above rounding level.
    pub fn new(vector: ComplexVector) -> Result<Self> {
        let tol = Tolerances::DEFAULT;
        let norm = vector.norm();
        let deviation = (norm - 1.0).abs();
        if deviation <= tol.exact_norm {
            Ok(Self { vector })
        } else if deviation <= tol.renormalize {
            Ok(Self {
                vector: vector.scale(Complex64::new(1.0 / norm, 0.0)),
            })
        } else {
            Err(Error::NotNormalized { norm })
        }
    }

    /// Standard basis state |k⟩.
    pub fn basis(dim: usize, k: usize) -> Self {
        Self {
            vector: ComplexVector::basis(dim, k),
        }
    }

    pub fn dim(&self) -> usize {
        self.vector.dim()
    }

    pub fn vector(&self) -> &ComplexVector {
        &self.vector
    }
}

/// Orthogonal spectral projectors of an observable, one per distinct
/// eigenvalue (after grouping near-degenerate eigenvalues).
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorSet {
    labels: Vec<f64>,
    projectors: Vec<ComplexMatrix>,
}

impl ProjectorSet {
    /// Distinct eigenvalues in descending order.
    pub fn labels(&self) -> &[f64] {
        &self.labels
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &ComplexMatrix)> {
        self.labels.iter().copied().zip(&self.projectors)
    }

    /// Index of the label nearest to `label`, if it lies within the matching tolerance.
    pub fn index_of(&self, label: f64) -> Result<usize> {
        match_label(&self.labels, label)
    }

    pub fn projector(&self, label: f64) -> Result<&ComplexMatrix> {
        self.index_of(label).map(|i| &self.projectors[i])
    }
}

/// Index of the entry of `labels` nearest to `label`, within the matching tolerance.
pub(crate) fn match_label(labels: &[f64], label: f64) -> Result<usize> {
    let tol = Tolerances::DEFAULT.label_match;
    labels
        .iter()
        .enumerate()
        .map(|(i, &l)| (i, (l - label).abs()))
        .filter(|&(_, diff)| diff <= tol * label.abs().max(1.0))
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .map(|(i, _)| i)
        .ok_or_else(|| Error::UnknownLabel {
            label,
            available: labels.to_vec(),
        })
}

/// Groups the eigenvalues of `obs` and sums the rank-one projectors of each group.
///
/// Consecutive eigenvalues (in descending order) closer than
/// `group_tol · max(1, spread)` are chained into one group; the group label is
/// the mean of its eigenvalues.
pub fn spectral_projectors(obs: &Observable, group_tol: f64) -> ProjectorSet {
    projectors_from_decomposition(&obs.decomposition, group_tol)
}

fn projectors_from_decomposition(eig: &EigenDecomposition, group_tol: f64) -> ProjectorSet {
    let values = &eig.eigenvalues;
    let n = values.len();
    let spread = values[0] - values[n - 1];
    let threshold = group_tol * spread.max(1.0);

    let mut groups: Vec<Vec<usize>> = Vec::new();
    for k in 0..n {
        match groups.last_mut() {
            Some(group) if values[*group.last().unwrap()] - values[k] <= threshold => group.push(k),
            _ => groups.push(vec![k]),
        }
    }

    let mut labels = Vec::with_capacity(groups.len());
    let mut projectors = Vec::with_capacity(groups.len());
    for group in groups {
        labels.push(group.iter().map(|&k| values[k]).sum::<f64>() / group.len() as f64);
        let mut p = ComplexMatrix::zeros(n);
        for &k in &group {
            let v = eig.eigenvectors.column(k);
            p = &p + &ComplexMatrix::outer(&v, &v);
        }
        projectors.push(p);
    }
    ProjectorSet { labels, projectors }
}

/// A Hermitian observable with its spectral decomposition and projectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    matrix: ComplexMatrix,
    decomposition: EigenDecomposition,
    projectors: ProjectorSet,
}

impl Observable {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerances(matrix, &Tolerances::DEFAULT)
    }

    pub fn with_tolerances(matrix: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        let decomposition = hermitian_eig_with(&matrix, tol)?;
        let projectors = projectors_from_decomposition(&decomposition, tol.group);
        Ok(Self {
            matrix,
            decomposition,
            projectors,
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn decomposition(&self) -> &EigenDecomposition {
        &self.decomposition
    }

    pub fn projectors(&self) -> &ProjectorSet {
        &self.projectors
    }

    pub fn spectral_min(&self) -> f64 {
        *self.decomposition.eigenvalues.last().unwrap()
    }

    pub fn spectral_max(&self) -> f64 {
        self.decomposition.eigenvalues[0]
    }
}

/// Evolution from 0 to t1 (`u1`) followed by t1 to t2 (`u2`).
#[derive(Debug, Clone, PartialEq)]
pub struct TwoStageEvolution {
    u1: ComplexMatrix,
    u2: ComplexMatrix,
}

impl TwoStageEvolution {
    pub fn new(u1: ComplexMatrix, u2: ComplexMatrix) -> Result<Self> {
        if u1.dim() != u2.dim() {
            return Err(Error::DimensionMismatch {
                expected: u1.dim(),
                found: u2.dim(),
            });
        }
        let tol = Tolerances::DEFAULT.unitary;
        u1.check_unitary(tol)?;
        u2.check_unitary(tol)?;
        Ok(Self { u1, u2 })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            u1: ComplexMatrix::identity(dim),
            u2: ComplexMatrix::identity(dim),
        }
    }

    /// Builds `u1 = exp(−i h1 t1)` and `u2 = exp(−i h2 t2)`.
    pub fn from_hamiltonians(
        h1: &ComplexMatrix,
        t1: f64,
        h2: &ComplexMatrix,
        t2: f64,
    ) -> Result<Self> {
        Self::new(
            unitary_from_hamiltonian(h1, t1)?,
            unitary_from_hamiltonian(h2, t2)?,
        )
    }

    pub fn dim(&self) -> usize {
        self.u1.dim()
    }

    pub fn u1(&self) -> &ComplexMatrix {
        &self.u1
    }

    pub fn u2(&self) -> &ComplexMatrix {
        &self.u2
    }
}

/// Time at which a Heisenberg-picture operator is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    T1,
    T2,
}

/// Heisenberg-picture operator: `U1† M U1` at t1, `U1† U2† M U2 U1` at t2.
pub fn heisenberg_operator(
    op: &ComplexMatrix,
    evo: &TwoStageEvolution,
    stage: Stage,
) -> Result<ComplexMatrix> {
    if op.dim() != evo.dim() {
        return Err(Error::DimensionMismatch {
            expected: evo.dim(),
            found: op.dim(),
        });
    }
    let total = match stage {
        Stage::T1 => evo.u1.clone(),
        Stage::T2 => evo.u2.matmul(&evo.u1),
    };
    Ok(total.adjoint().matmul(&op.matmul(&total)))
}

/// Real variant (takes `Re` of the complex quantities) or the full complex variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Real,
    Complex,
}

impl Mode {
    /// Projects a complex quantity onto this mode.
    #[inline]
    pub fn apply(self, z: Complex64) -> Complex64 {
        match self {
            Mode::Real => Complex64::new(z.re, 0.0),
            Mode::Complex => z,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Real => "real",
            Mode::Complex => "complex",
        }
    }
}

/// Pre-selected state, two observables, the evolution and the mode.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    psi: Ket,
    obs_a: Observable,
    obs_b: Observable,
    evolution: TwoStageEvolution,
    mode: Mode,
}

impl Scenario {
    pub fn new(
        psi: Ket,
        obs_a: Observable,
        obs_b: Observable,
        evolution: TwoStageEvolution,
        mode: Mode,
    ) -> Result<Self> {
        let dim = psi.dim();
        for found in [obs_a.dim(), obs_b.dim(), evolution.dim()] {
            if found != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found,
                });
            }
        }
        Ok(Self {
            psi,
            obs_a,
            obs_b,
            evolution,
            mode,
        })
    }

    pub fn dim(&self) -> usize {
        self.psi.dim()
    }

    pub fn psi(&self) -> &Ket {
        &self.psi
    }

    pub fn obs_a(&self) -> &Observable {
        &self.obs_a
    }

    pub fn obs_b(&self) -> &Observable {
        &self.obs_b
    }

    pub fn evolution(&self) -> &TwoStageEvolution {
        &self.evolution
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn with_mode(&self, mode: Mode) -> Self {
        Self {
            mode,
            ..self.clone()
        }
    }

    /// U1 |ψ⟩.
    pub fn state_at_t1(&self) -> ComplexVector {
        self.evolution.u1.apply(self.psi.vector())
    }

    /// U2 U1 |ψ⟩.
    pub fn state_at_t2(&self) -> ComplexVector {
        self.evolution.u2.apply(&self.state_at_t1())
    }
}

/// Pr_ψ(b) = ⟨ψ|P_b^B(t2)|ψ⟩ = ‖P_b U2 U1 |ψ⟩‖².
pub fn postselection_probability(s: &Scenario, b_label: f64) -> Result<f64> {
    let p = s.obs_b.projectors.projector(b_label)?;
    Ok(p.apply(&s.state_at_t2()).norm_sqr())
}

/// Pr_ψ(a) = ⟨ψ|P_a^A(t1)|ψ⟩ = ‖P_a U1 |ψ⟩‖².
pub fn intermediate_probability(s: &Scenario, a_label: f64) -> Result<f64> {
    let p = s.obs_a.projectors.projector(a_label)?;
    Ok(p.apply(&s.state_at_t1()).norm_sqr())
}

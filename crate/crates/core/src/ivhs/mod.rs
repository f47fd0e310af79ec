//! Infinitesimal variation of Hodge structure of the Jacobian of a plane
//! curve `C = {Y^d = f}` at one fiber.
//!
//! `H^{1,0}(C)` and `H^{0,1}(C)` are realized as `R_F^{d-3}` and
//! `R_F^{2d-3}`; the contraction `T (x) H^{1,0} -> H^{0,1}` is multiplication
//! in `R_F`. Hodge pieces of the Jacobian are exterior powers of these, and
//! the transposed maps on them are built from the contraction with explicit
//! alternating signs.

pub mod exterior;
mod invariant;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{DenseMatrix, Field, Subspace};
use crate::par::{self, Exec};
use crate::polyring::{BinaryForm, GradedQuotientPiece, JacobianRing, RingElementClass, RingKind};

pub use exterior::{binomial, comultiply, Combinations};
pub use invariant::{dual_invariant_space, DualInvariantSpace, KernelCondition};

use exterior::{indices, parity_sign, wedge_front};

/// Which tangent directions to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TangentChoice {
    /// `W = R^d_f`, the Y-degree-0 part of `R^d_F` (dimension `d - 3`).
    #[default]
    IkedaSlice,
    /// All of `R^d_F`, the tangent space of the plane-curve family.
    FullPlane,
}

/// A based subspace of `R^d_F` used as the tangent space `T`.
#[derive(Debug, Clone)]
pub struct TangentSlice<E> {
    pub ambient: Arc<GradedQuotientPiece<E>>,
    pub basis_w: Vec<RingElementClass<E>>,
}

impl<E: Clone + PartialEq> TangentSlice<E> {
    pub fn dim(&self) -> usize {
        self.basis_w.len()
    }
}

/// Sparse column of the contraction: nonzero `(H^{0,1} index, coefficient)`.
type SparseVec<E> = Vec<(usize, E)>;

/// Hodge-theoretic data of one smooth fiber.
#[derive(Debug, Clone)]
pub struct HodgeData<F: Field> {
    pub ring: Arc<JacobianRing<F>>,
    pub g: usize,
    pub h10: Arc<GradedQuotientPiece<F::Elem>>,
    pub h01: Arc<GradedQuotientPiece<F::Elem>>,
    pub tangent: TangentSlice<F::Elem>,
    // contraction[i * g + j] = u_i * omega_j in H^{0,1}
    contraction: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> HodgeData<F> {
    pub fn new(field: &F, f: &BinaryForm<F::Elem>, choice: TangentChoice) -> Result<Self> {
        let ring = Arc::new(JacobianRing::plane(field, f)?);
        let d = ring.d();
        let ambient = ring.piece(d);
        let basis_w = (0..ambient.dim())
            .filter(|&i| choice == TangentChoice::FullPlane || ambient.y_degree(i) == 0)
            .map(|i| ring.basis_class(d, i))
            .collect();
        Self::with_tangent_basis(ring, basis_w)
    }

    /// Uses an explicit basis of tangent directions in `R^d_F`.
    pub fn with_tangent_basis(
        ring: Arc<JacobianRing<F>>,
        basis_w: Vec<RingElementClass<F::Elem>>,
    ) -> Result<Self> {
        if ring.kind() != RingKind::Plane {
            return Err(Error::RingMismatch);
        }
        let d = ring.d();
        if basis_w.iter().any(|u| u.degree != d) {
            let found = basis_w.iter().map(|u| u.degree).find(|&k| k != d).unwrap_or(d);
            return Err(Error::DegreeMismatch { expected: d, found });
        }
        let h10 = ring.piece(d - 3);
        let h01 = ring.piece(2 * d - 3);
        let g = h10.dim();
        let tangent = TangentSlice {
            ambient: ring.piece(d),
            basis_w,
        };
        let field = ring.field().clone();
        let pairs: Vec<(usize, usize)> = (0..tangent.dim())
            .flat_map(|i| (0..g).map(move |j| (i, j)))
            .collect();
        let contraction = par::map(Exec::default(), &pairs, |&(i, j)| {
            let prod = ring
                .multiply(&tangent.basis_w[i], &ring.basis_class(d - 3, j))
                .expect("same ring");
            prod.coords
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !field.is_zero(c))
                .collect()
        });
        Ok(HodgeData {
            ring,
            g,
            h10,
            h01,
            tangent,
            contraction,
        })
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn d(&self) -> usize {
        self.ring.d()
    }

    pub fn dim_t(&self) -> usize {
        self.tangent.dim()
    }

    fn contraction_entry(&self, i: usize, j: usize) -> &SparseVec<F::Elem> {
        &self.contraction[i * self.g + j]
    }

    /// Matrix of `T (x) H^{1,0} -> H^{0,1}`; column `i * g + j` is `u_i * omega_j`.
    pub fn contraction_matrix(&self) -> DenseMatrix<F::Elem> {
        let field = self.field();
        let mut m = DenseMatrix::zeros(field, self.g, self.dim_t() * self.g);
        for (col, entries) in self.contraction.iter().enumerate() {
            for (h, c) in entries {
                m[(*h, col)] = c.clone();
            }
        }
        m
    }
}

/// `u * omega` in `H^{0,1} = R_F^{2d-3}`.
pub fn contraction_110<F: Field>(
    hodge: &HodgeData<F>,
    u: &RingElementClass<F::Elem>,
    omega: &RingElementClass<F::Elem>,
) -> Result<RingElementClass<F::Elem>> {
    let d = hodge.d();
    if u.degree != d {
        return Err(Error::DegreeMismatch { expected: d, found: u.degree });
    }
    if omega.degree != d - 3 {
        return Err(Error::DegreeMismatch { expected: d - 3, found: omega.degree });
    }
    hodge.ring.multiply(u, omega)
}

/// Basis of `⋀^a T (x) ⋀^p H^{1,0} (x) ⋀^q H^{0,1}`: lexicographic triples of
/// subsets, flattened with the `H^{0,1}` factor varying fastest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtTensorSpace {
    pub a: usize,
    pub p: usize,
    pub q: usize,
    t: Combinations,
    h10: Combinations,
    h01: Combinations,
}

impl ExtTensorSpace {
    pub fn new(dim_t: usize, g: usize, a: usize, p: usize, q: usize) -> Result<Self> {
        Ok(ExtTensorSpace {
            a,
            p,
            q,
            t: Combinations::new(dim_t, a)?,
            h10: Combinations::new(g, p)?,
            h01: Combinations::new(g, q)?,
        })
    }

    pub fn for_hodge<F: Field>(hodge: &HodgeData<F>, a: usize, p: usize, q: usize) -> Result<Self> {
        Self::new(hodge.dim_t(), hodge.g, a, p, q)
    }

    pub fn dim(&self) -> usize {
        self.t.len() * self.h10.len() * self.h01.len()
    }

    pub fn dim_t(&self) -> usize {
        self.t.n()
    }

    pub fn g(&self) -> usize {
        self.h10.n()
    }

    pub fn index_of(&self, t: u32, p: u32, q: u32) -> usize {
        (self.t.rank(t) * self.h10.len() + self.h10.rank(p)) * self.h01.len() + self.h01.rank(q)
    }

    /// The three subset masks of a basis index.
    pub fn masks(&self, index: usize) -> (u32, u32, u32) {
        let nq = self.h01.len();
        let np = self.h10.len();
        let qi = index % nq;
        let pi = (index / nq) % np;
        let ti = index / (nq * np);
        (self.t.mask(ti), self.h10.mask(pi), self.h01.mask(qi))
    }

    /// Label such as `u0^u1|w2^w5|e3`; `1` marks an empty factor.
    pub fn label(&self, index: usize) -> String {
        let (t, p, q) = self.masks(index);
        let part = |prefix: &str, mask: u32| {
            let s: Vec<String> = indices(mask).map(|i| format!("{prefix}{i}")).collect();
            if s.is_empty() {
                "1".to_string()
            } else {
                s.join("^")
            }
        };
        format!("{}|{}|{}", part("u", t), part("w", p), part("e", q))
    }
}

/// Explicit matrix (target x source) of a transposed map between two
/// [`ExtTensorSpace`]s.
#[derive(Debug, Clone)]
pub struct NablaMap<E> {
    pub source: ExtTensorSpace,
    pub target: ExtTensorSpace,
    pub matrix: DenseMatrix<E>,
}

impl<E: Clone + PartialEq> NablaMap<E> {
    /// Image as a subspace of the target.
    pub fn image<F: Field<Elem = E>>(&self, field: &F) -> Subspace<E> {
        Subspace::row_space(field, &self.matrix.transpose())
    }
}

/// Sparse image of one source basis vector under the transposed map.
fn nabla_column<F: Field>(
    hodge: &HodgeData<F>,
    source: &ExtTensorSpace,
    target: &ExtTensorSpace,
    col: usize,
) -> Vec<(usize, F::Elem)> {
    let field = hodge.field();
    let (tm, pm, qm) = source.masks(col);
    let mut out: Vec<(usize, F::Elem)> = Vec::new();
    for (ii, i) in indices(tm).enumerate() {
        for (jj, j) in indices(pm).enumerate() {
            let sign = parity_sign(ii + jj);
            let t_rest = tm & !(1 << i);
            let p_rest = pm & !(1 << j);
            for (h, c) in hodge.contraction_entry(i, j) {
                let Some((q_new, wsign)) = wedge_front(*h, qm) else {
                    continue;
                };
                let row = target.index_of(t_rest, p_rest, q_new);
                let coeff = if sign * wsign > 0 { c.clone() } else { field.neg(c) };
                out.push((row, coeff));
            }
        }
    }
    out
}

/// The transposed map
/// `⋀^a T (x) ⋀^p H^{1,0} (x) ⋀^q H^{0,1} -> ⋀^{a-1} T (x) ⋀^{p-1} H^{1,0} (x) ⋀^{q+1} H^{0,1}`
/// sending `u_I (x) omega_P (x) eta_Q` to
/// `sum_{i,j} (-1)^{i+j} u_{I - i} (x) omega_{P - j} (x) (u_i omega_j) ^ eta_Q`,
/// with `i`, `j` the positions inside `I`, `P`.
pub fn transposed_nabla<F: Field>(
    hodge: &HodgeData<F>,
    a: usize,
    p: usize,
    q: usize,
) -> Result<NablaMap<F::Elem>> {
    transposed_nabla_with(hodge, a, p, q, Exec::default())
}

pub fn transposed_nabla_with<F: Field>(
    hodge: &HodgeData<F>,
    a: usize,
    p: usize,
    q: usize,
    exec: Exec,
) -> Result<NablaMap<F::Elem>> {
    if a == 0 || p == 0 {
        return Err(Error::OrderOutOfRange(format!(
            "transposed map needs a >= 1 and p >= 1, got (a, p, q) = ({a}, {p}, {q})"
        )));
    }
    let source = ExtTensorSpace::for_hodge(hodge, a, p, q)?;
    let target = ExtTensorSpace::for_hodge(hodge, a - 1, p - 1, q + 1)?;
    let field = hodge.field();
    let columns = par::map_range(exec, source.dim(), |col| nabla_column(hodge, &source, &target, col));
    let mut matrix = DenseMatrix::zeros(field, target.dim(), source.dim());
    for (col, entries) in columns.into_iter().enumerate() {
        for (row, c) in entries {
            let cur = &mut matrix[(row, col)];
            *cur = field.add(cur, &c);
        }
    }
    Ok(NablaMap {
        source,
        target,
        matrix,
    })
}

/// Which Hodge piece of the curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HodgePiece {
    H10,
    H01,
}

/// Characters of the `Z/d` action `Y -> zeta Y` on the standard-monomial
/// bases: a class represented by a monomial of Y-degree `a` has weight
/// `(a + 1) mod d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterWeights {
    pub d: usize,
    pub h10: Vec<usize>,
    pub h01: Vec<usize>,
}

impl CharacterWeights {
    pub fn weights(&self, piece: HodgePiece) -> &[usize] {
        match piece {
            HodgePiece::H10 => &self.h10,
            HodgePiece::H01 => &self.h01,
        }
    }

    /// Basis indices spanning the weight-`w` eigenspace.
    pub fn eigenspace(&self, piece: HodgePiece, w: usize) -> Vec<usize> {
        self.weights(piece)
            .iter()
            .enumerate()
            .filter(|(_, &x)| x == w % self.d)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn eigenspace_dim(&self, piece: HodgePiece, w: usize) -> usize {
        self.eigenspace(piece, w).len()
    }
}

pub fn character_weights<F: Field>(hodge: &HodgeData<F>) -> CharacterWeights {
    let d = hodge.d();
    let weigh = |piece: &GradedQuotientPiece<F::Elem>| {
        (0..piece.dim()).map(|i| (piece.y_degree(i) + 1) % d).collect()
    };
    CharacterWeights {
        d,
        h10: weigh(&hodge.h10),
        h01: weigh(&hodge.h01),
    }
}

/// Index of the single T-subset containing everything, for slices with
/// `dim T = a`.
pub(crate) fn full_mask(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

#[cfg(test)]
mod tests;

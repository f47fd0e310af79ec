//! The dual space of infinitesimal invariants.
//!
//! For `s >= 1` the kernel in question is
//!
//! ```text
//! ⋀^s T (x) H^{s+1,1}  --Δ (x) id-->  T (x) ⋀^{s-1} T (x) H^{s+1,1}
//!                      --id (x) π-->  T (x) [⋀^{s-1} T (x) H^{s+1,1} / Im N_s]
//! ```
//!
//! with `N_s` the transposed map of orders `(s, s+2, 0)` and `Δ` the
//! comultiplication. The composite splits into one *slot* per basis vector
//! `u_k` of `T`; a vector lies in the kernel iff each slot component lands in
//! `Im N_s`.

use crate::exactla::{kernel, quotient, DenseMatrix, Field, QuotientSpace, Subspace};
use crate::error::{Error, Result};

use super::exterior::comultiply;
use super::{transposed_nabla, ExtTensorSpace, HodgeData};

/// The quotient construction needed to test membership in the kernel.
#[derive(Debug, Clone)]
pub struct KernelCondition<E> {
    pub s: usize,
    /// `⋀^s T (x) ⋀^{s+1} H^{1,0} (x) H^{0,1}`
    pub source: ExtTensorSpace,
    /// `⋀^{s-1} T (x) ⋀^{s+1} H^{1,0} (x) H^{0,1}`
    pub slot_space: ExtTensorSpace,
    /// Image of the transposed map of orders `(s, s+2, 0)` in the slot space.
    pub image: Subspace<E>,
    pub quotient: QuotientSpace<E>,
}

impl<E: Clone + PartialEq> KernelCondition<E> {
    pub fn new<F: Field<Elem = E>>(hodge: &HodgeData<F>, s: usize) -> Result<Self> {
        if s == 0 {
            return Err(Error::OrderOutOfRange("s must be at least 1".into()));
        }
        let field = hodge.field();
        let source = ExtTensorSpace::for_hodge(hodge, s, s + 1, 1)?;
        let slot_space = ExtTensorSpace::for_hodge(hodge, s - 1, s + 1, 1)?;
        let nabla = transposed_nabla(hodge, s, s + 2, 0)?;
        debug_assert_eq!(nabla.target, slot_space);
        let image = nabla.image(field);
        let quotient = quotient(field, slot_space.dim(), &image);
        Ok(KernelCondition {
            s,
            source,
            slot_space,
            image,
            quotient,
        })
    }

    /// Slot-`k` component of `(Δ (x) id)(e_j)` for one source basis index,
    /// as `(k, slot-space index, sign)` triples.
    fn slot_terms(&self, j: usize) -> Vec<(usize, usize, i64)> {
        let (t, p, q) = self.source.masks(j);
        comultiply(t)
            .into_iter()
            .map(|(k, rest, sign)| (k, self.slot_space.index_of(rest, p, q), sign))
            .collect()
    }

    /// The slot components of `(Δ (x) id)(v)`, one vector per `u_k`.
    pub fn slot_images<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<Vec<E>> {
        assert_eq!(v.len(), self.source.dim(), "vector must live in the source space");
        let dim_t = self.source.dim_t();
        let mut out = vec![vec![field.zero(); self.slot_space.dim()]; dim_t];
        for (j, c) in v.iter().enumerate() {
            if field.is_zero(c) {
                continue;
            }
            for (k, m, sign) in self.slot_terms(j) {
                let term = if sign > 0 { c.clone() } else { field.neg(c) };
                out[k][m] = field.add(&out[k][m], &term);
            }
        }
        out
    }

    /// Quotient coordinates of every slot component; all zero iff `v` lies in
    /// the kernel.
    pub fn residuals<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<Vec<E>> {
        self.slot_images(field, v)
            .iter()
            .map(|y| self.quotient.project(field, y))
            .collect()
    }

    pub fn contains<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> bool {
        self.residuals(field, v)
            .iter()
            .all(|r| r.iter().all(|x| field.is_zero(x)))
    }

    /// Kernel of the composite for one slot `k`.
    ///
    /// Source basis vectors whose T-part contains `k` map injectively, up to
    /// sign, onto slot-space basis vectors; the others map to zero. The
    /// kernel is therefore the pullback of `Im N_s ∩ (coordinate subspace)`
    /// plus the span of the vectors missing `k`.
    fn slot_kernel<F: Field<Elem = E>>(&self, field: &F, k: usize) -> Subspace<E> {
        let n = self.source.dim();
        let m_dim = self.slot_space.dim();
        // target[m] = Some((source index, sign)) when m is hit by slot k
        let mut target: Vec<Option<(usize, i64)>> = vec![None; m_dim];
        let mut missing = Vec::new();
        for j in 0..n {
            match self.slot_terms(j).into_iter().find(|&(kk, _, _)| kk == k) {
                Some((_, m, sign)) => target[m] = Some((j, sign)),
                None => missing.push(j),
            }
        }
        let rows = self.image.basis();
        let r = rows.rows();
        // coefficients c with (c * rows) vanishing off the hit coordinates
        let constraint_rows: Vec<Vec<E>> = (0..m_dim)
            .filter(|&m| target[m].is_none())
            .map(|m| rows.column(m))
            .filter(|col| col.iter().any(|x| !field.is_zero(x)))
            .collect();
        let coeffs = if constraint_rows.is_empty() {
            Subspace::full(field, r)
        } else {
            kernel(field, &DenseMatrix::from_rows(r, constraint_rows))
        };
        let mut vectors = Vec::with_capacity(coeffs.rank() + missing.len());
        for i in 0..coeffs.rank() {
            let y = rows.vec_mul(field, coeffs.basis().row(i));
            let mut x = vec![field.zero(); n];
            for (m, entry) in target.iter().enumerate() {
                if let Some((j, sign)) = entry {
                    x[*j] = if *sign > 0 { y[m].clone() } else { field.neg(&y[m]) };
                }
            }
            vectors.push(x);
        }
        for j in missing {
            let mut x = vec![field.zero(); n];
            x[j] = field.one();
            vectors.push(x);
        }
        Subspace::span(field, n, vectors)
    }

    /// The full kernel as a subspace of the source.
    pub fn kernel<F: Field<Elem = E>>(&self, field: &F) -> Subspace<E> {
        let dim_t = self.source.dim_t();
        let mut acc: Option<Subspace<E>> = None;
        for k in 0..dim_t {
            let sk = self.slot_kernel(field, k);
            acc = Some(match acc {
                None => sk,
                Some(prev) => prev.intersect(field, &sk),
            });
        }
        acc.unwrap_or_else(|| Subspace::full(field, self.source.dim()))
    }
}

/// Kernel of the composite together with the image that is divided out.
#[derive(Debug, Clone)]
pub struct DualInvariantSpace<E> {
    pub s: usize,
    pub condition: KernelCondition<E>,
    pub kernel: Subspace<E>,
    /// Image of the transposed map of orders `(s+1, s+2, 0)`.
    pub modded_image: Subspace<E>,
}

impl<E: Clone + PartialEq> DualInvariantSpace<E> {
    /// `dim kernel - dim modded_image`.
    pub fn dim(&self) -> usize {
        self.kernel.rank() - self.modded_image.rank()
    }
}

pub fn dual_invariant_space<F: Field>(
    s: usize,
    hodge: &HodgeData<F>,
) -> Result<DualInvariantSpace<F::Elem>> {
    let field = hodge.field();
    let condition = KernelCondition::new(hodge, s)?;
    let kernel = condition.kernel(field);
    let modded = transposed_nabla(hodge, s + 1, s + 2, 0)?;
    let modded_image = if modded.source.dim() == 0 {
        Subspace::zero(field, condition.source.dim())
    } else {
        modded.image(field)
    };
    Ok(DualInvariantSpace {
        s,
        condition,
        kernel,
        modded_image,
    })
}

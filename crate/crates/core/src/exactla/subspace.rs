use super::field::Field;
use super::matrix::{rref_in_place, DenseMatrix};
use crate::par::Exec;

/// A linear subspace of `F^n`, stored as the nonzero rows of a reduced row
/// echelon matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<E> {
    ambient_dim: usize,
    basis: DenseMatrix<E>,
    pivots: Vec<usize>,
}

impl<E: Clone + PartialEq> Subspace<E> {
    pub fn zero<F: Field<Elem = E>>(field: &F, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: DenseMatrix::zeros(field, 0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full<F: Field<Elem = E>>(field: &F, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: DenseMatrix::identity(field, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// The span of the rows of `m`.
    pub fn row_space<F: Field<Elem = E>>(field: &F, m: &DenseMatrix<E>) -> Self {
        Self::row_space_with(field, m, Exec::default())
    }

    pub fn row_space_with<F: Field<Elem = E>>(field: &F, m: &DenseMatrix<E>, exec: Exec) -> Self {
        let mut a = m.clone();
        let pivots = rref_in_place(field, &mut a, exec);
        let keep: Vec<usize> = (0..pivots.len()).collect();
        Subspace {
            ambient_dim: m.cols(),
            basis: a.select_rows(&keep),
            pivots,
        }
    }

    /// The span of the given vectors, each of length `ambient_dim`.
    pub fn span<F: Field<Elem = E>>(field: &F, ambient_dim: usize, vectors: Vec<Vec<E>>) -> Self {
        Self::row_space(field, &DenseMatrix::from_rows(ambient_dim, vectors))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Echelon basis; row `i` has its leading 1 in column `pivots()[i]`.
    pub fn basis(&self) -> &DenseMatrix<E> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the echelon basis. The result vanishes on every
    /// pivot column and differs from `v` by an element of the subspace.
    pub fn reduce<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.ambient_dim, "vector length must match ambient dimension");
        let mut w = v.to_vec();
        for (r, &c) in self.pivots.iter().enumerate() {
            if !field.is_zero(&w[c]) {
                let factor = w[c].clone();
                field.sub_scaled(&mut w, &factor, self.basis.row(r));
            }
        }
        w
    }

    pub fn contains<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> bool {
        self.reduce(field, v).iter().all(|x| field.is_zero(x))
    }

    pub fn contains_subspace<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> bool {
        (0..other.rank()).all(|i| self.contains(field, other.basis.row(i)))
    }

    /// Intersection with another subspace of the same ambient space.
    pub fn intersect<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient dimensions must agree");
        if self.rank() > other.rank() {
            return other.intersect(field, self);
        }
        // x = sum a_i b_i lies in `other` iff its class modulo `other` vanishes
        let q = quotient(field, self.ambient_dim, other);
        let classes: Vec<Vec<E>> = (0..self.rank())
            .map(|i| q.project(field, self.basis.row(i)))
            .collect();
        let coeff_map = DenseMatrix::from_columns(q.dim(), &classes, field.zero());
        let coeffs = kernel(field, &coeff_map);
        let vectors = (0..coeffs.rank())
            .map(|i| self.basis.vec_mul(field, coeffs.basis.row(i)))
            .collect();
        Self::span(field, self.ambient_dim, vectors)
    }
}

/// The null space `{v : m v = 0}`.
pub fn kernel<F: Field>(field: &F, m: &DenseMatrix<F::Elem>) -> Subspace<F::Elem> {
    kernel_with(field, m, Exec::default())
}

pub fn kernel_with<F: Field>(field: &F, m: &DenseMatrix<F::Elem>, exec: Exec) -> Subspace<F::Elem> {
    let n = m.cols();
    let mut a = m.clone();
    let pivots = rref_in_place(field, &mut a, exec);
    let mut is_pivot = vec![false; n];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    if free.is_empty() {
        return Subspace::zero(field, n);
    }
    // one vector per free column, then echelonize
    let vectors: Vec<Vec<F::Elem>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![field.zero(); n];
            v[f] = field.one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = field.neg(&a[(r, f)]);
            }
            v
        })
        .collect();
    Subspace::row_space_with(field, &DenseMatrix::from_rows(n, vectors), exec)
}

/// `F^n` modulo a subspace, with the non-pivot unit vectors as coset
/// representatives.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientSpace<E> {
    ambient_dim: usize,
    denominator: Subspace<E>,
    coset_reps: Vec<usize>,
    // ambient index -> position among coset reps
    rep_position: Vec<Option<usize>>,
}

pub fn quotient<F: Field>(
    field: &F,
    ambient_dim: usize,
    denominator: &Subspace<F::Elem>,
) -> QuotientSpace<F::Elem> {
    let _ = field;
    assert_eq!(
        denominator.ambient_dim(),
        ambient_dim,
        "denominator must live in the ambient space"
    );
    let mut rep_position = vec![Some(0); ambient_dim];
    for &c in denominator.pivots() {
        rep_position[c] = None;
    }
    let mut coset_reps = Vec::with_capacity(ambient_dim - denominator.rank());
    for (i, slot) in rep_position.iter_mut().enumerate() {
        if slot.is_some() {
            *slot = Some(coset_reps.len());
            coset_reps.push(i);
        }
    }
    QuotientSpace {
        ambient_dim,
        denominator: denominator.clone(),
        coset_reps,
        rep_position,
    }
}

impl<E: Clone + PartialEq> QuotientSpace<E> {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn denominator(&self) -> &Subspace<E> {
        &self.denominator
    }

    /// Ambient indices whose unit vectors form the coset representatives.
    pub fn coset_rep_indices(&self) -> &[usize] {
        &self.coset_reps
    }

    pub fn coset_rep<F: Field<Elem = E>>(&self, field: &F, i: usize) -> Vec<E> {
        let mut v = vec![field.zero(); self.ambient_dim];
        v[self.coset_reps[i]] = field.one();
        v
    }

    pub fn dim(&self) -> usize {
        self.coset_reps.len()
    }

    /// Position of an ambient index among the coset representatives.
    pub fn rep_position(&self, ambient_index: usize) -> Option<usize> {
        self.rep_position[ambient_index]
    }

    /// Coordinates of the class of `v` in the coset-representative basis.
    pub fn project<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        let w = self.denominator.reduce(field, v);
        self.coset_reps.iter().map(|&i| w[i].clone()).collect()
    }

    /// Lifts quotient coordinates back to the ambient space.
    pub fn lift<F: Field<Elem = E>>(&self, field: &F, coords: &[E]) -> Vec<E> {
        assert_eq!(coords.len(), self.dim());
        let mut v = vec![field.zero(); self.ambient_dim];
        for (c, &i) in coords.iter().zip(&self.coset_reps) {
            v[i] = c.clone();
        }
        v
    }
}

pub fn project_to_quotient<F: Field>(
    field: &F,
    v: &[F::Elem],
    q: &QuotientSpace<F::Elem>,
) -> Vec<F::Elem> {
    q.project(field, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::field::Rationals;

    #[test]
    fn kernel_examples() {
        let q = Rationals;
        let zero = DenseMatrix::zeros(&q, 3, 5);
        assert_eq!(kernel(&q, &zero).rank(), 5);
        assert_eq!(kernel(&q, &DenseMatrix::identity(&q, 4)).rank(), 0);

        let m = DenseMatrix::from_i64(&q, &[&[1, 1, 0]]);
        let k = kernel(&q, &m);
        assert_eq!(k.rank(), 2);
        let v = |x: &[i64]| x.iter().map(|&a| q.from_i64(a)).collect::<Vec<_>>();
        assert!(k.contains(&q, &v(&[1, -1, 0])));
        assert!(k.contains(&q, &v(&[0, 0, 1])));
        assert!(!k.contains(&q, &v(&[1, 0, 0])));
    }

    #[test]
    fn quotient_examples() {
        let q = Rationals;
        let v = |x: &[i64]| x.iter().map(|&a| q.from_i64(a)).collect::<Vec<_>>();

        let by_zero = quotient(&q, 3, &Subspace::zero(&q, 3));
        assert_eq!(by_zero.coset_rep_indices(), &[0, 1, 2]);
        let by_full = quotient(&q, 3, &Subspace::full(&q, 3));
        assert_eq!(by_full.dim(), 0);

        let line = Subspace::span(&q, 2, vec![v(&[1, 1])]);
        let qs = quotient(&q, 2, &line);
        assert_eq!(qs.dim(), 1);
        assert_eq!(qs.coset_rep(&q, 0), v(&[0, 1]));
        assert_eq!(project_to_quotient(&q, &v(&[1, 1]), &qs), v(&[0]));
        assert_eq!(project_to_quotient(&q, &v(&[0, 1]), &qs), v(&[1]));
        assert_eq!(project_to_quotient(&q, &v(&[1, 0]), &qs), v(&[-1]));
        assert_eq!(qs.lift(&q, &v(&[3])), v(&[0, 3]));
    }

    #[test]
    fn intersection_of_planes() {
        let q = Rationals;
        let v = |x: &[i64]| x.iter().map(|&a| q.from_i64(a)).collect::<Vec<_>>();
        let a = Subspace::span(&q, 3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(&q, 3, vec![v(&[0, 1, 0]), v(&[0, 0, 1])]);
        let c = a.intersect(&q, &b);
        assert_eq!(c.rank(), 1);
        assert!(c.contains(&q, &v(&[0, 1, 0])));
        assert!(a.contains_subspace(&q, &c));
        assert_eq!(a.intersect(&q, &Subspace::zero(&q, 3)).rank(), 0);
    }
}

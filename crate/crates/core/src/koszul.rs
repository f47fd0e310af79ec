//! Koszul cohomology `K_{k,1}` of a smooth plane curve `{F = 0}` of degree
//! `d`, computed from its canonical ring.
//!
//! `H^0(mK)` is `S^{m(d-3)} / F S^{m(d-3)-d}` with `S = k[Y, X0, X1]`. The
//! differential
//! `⋀^k V (x) H^0(mK) -> ⋀^{k-1} V (x) H^0((m+1)K)` with `V = H^0(K)` sends
//! `v_I (x) w` to `sum_i (-1)^i v_{I - i_i} (x) v_{i_i} w`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{kernel, quotient, rank, DenseMatrix, Field, QuotientSpace, Subspace};
use crate::ivhs::{comultiply, Combinations};
use crate::polyring::{BinaryForm, MonomialBasis, Poly, Vars};

/// `H^0(mK)` with its monomial coset basis.
#[derive(Debug, Clone)]
pub struct CanonicalPiece<E> {
    pub m: usize,
    pub monomials: MonomialBasis,
    pub quotient: QuotientSpace<E>,
}

impl<E: Clone + PartialEq> CanonicalPiece<E> {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }
}

/// The canonical ring of a smooth plane curve, piece by piece.
#[derive(Debug, Clone)]
pub struct CanonicalRing<F: Field> {
    field: F,
    big_f: Poly<F::Elem>,
}

impl<F: Field> CanonicalRing<F> {
    /// Ring of `{F = 0}` for a ternary form `F` of degree at least 4.
    pub fn new(field: &F, big_f: Poly<F::Elem>) -> Result<Self> {
        if big_f.vars() != Vars::Three {
            return Err(Error::RingMismatch);
        }
        if big_f.degree() < 4 {
            return Err(Error::DegreeTooSmall(big_f.degree()));
        }
        Ok(CanonicalRing {
            field: field.clone(),
            big_f,
        })
    }

    /// Ring of `Y^d = f(X0, X1)`.
    pub fn plane(field: &F, f: &BinaryForm<F::Elem>) -> Result<Self> {
        let d = f.degree();
        let y_d = Poly::monomial(field, Vars::Three, [d, 0, 0]);
        let minus_f = f.to_poly().to_three_vars(field).scale(field, &field.from_i64(-1));
        Self::new(field, y_d.add(field, &minus_f))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn d(&self) -> usize {
        self.big_f.degree()
    }

    pub fn genus(&self) -> usize {
        let d = self.d();
        (d - 1) * (d - 2) / 2
    }

    pub fn piece(&self, m: usize) -> CanonicalPiece<F::Elem> {
        let field = &self.field;
        let d = self.d();
        let degree = m * (d - 3);
        let monomials = MonomialBasis::new(Vars::Three, degree);
        let rows: Vec<Vec<F::Elem>> = if degree >= d {
            MonomialBasis::new(Vars::Three, degree - d)
                .iter()
                .map(|e| {
                    self.big_f
                        .mul(field, &Poly::monomial(field, Vars::Three, e))
                        .coeffs()
                        .to_vec()
                })
                .collect()
        } else {
            Vec::new()
        };
        let relations = Subspace::row_space(field, &DenseMatrix::from_rows(monomials.len(), rows));
        CanonicalPiece {
            m,
            monomials,
            quotient: quotient(field, monomials.len(), &relations),
        }
    }

    /// Matrix of `V (x) H^0(mK) -> H^0((m+1)K)`; column `i * dim + j` is the
    /// product of the `i`-th basis form of `V` with the `j`-th of `H^0(mK)`.
    pub fn multiplication(
        &self,
        v: &CanonicalPiece<F::Elem>,
        src: &CanonicalPiece<F::Elem>,
        dst: &CanonicalPiece<F::Elem>,
    ) -> Vec<Vec<Vec<F::Elem>>> {
        let field = &self.field;
        let mono = |piece: &CanonicalPiece<F::Elem>, i: usize| {
            let e = piece.monomials.exponents(piece.quotient.coset_rep_indices()[i]);
            Poly::monomial(field, Vars::Three, e)
        };
        (0..v.dim())
            .map(|i| {
                let a = mono(v, i);
                (0..src.dim())
                    .map(|j| dst.quotient.project(field, a.mul(field, &mono(src, j)).coeffs()))
                    .collect()
            })
            .collect()
    }
}

/// Multiplication `H^0(K) x H^0(K) -> H^0(2K)` in fixed bases.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalMultTable<E> {
    pub dim_h0k: usize,
    pub dim_h02k: usize,
    /// `table[i][j]` is `omega_i omega_j` in `H^0(2K)`.
    pub table: Vec<Vec<Vec<E>>>,
}

impl<E: Clone + PartialEq> CanonicalMultTable<E> {
    pub fn is_symmetric(&self) -> bool {
        (0..self.dim_h0k).all(|i| (0..i).all(|j| self.table[i][j] == self.table[j][i]))
    }
}

pub fn canonical_mult_table<F: Field>(ring: &CanonicalRing<F>) -> CanonicalMultTable<F::Elem> {
    let v = ring.piece(1);
    let w = ring.piece(2);
    CanonicalMultTable {
        dim_h0k: v.dim(),
        dim_h02k: w.dim(),
        table: ring.multiplication(&v, &v, &w),
    }
}

/// Table for `Y^d = f(X0, X1)`.
pub fn canonical_mult_table_plane<F: Field>(
    field: &F,
    f: &BinaryForm<F::Elem>,
) -> Result<CanonicalMultTable<F::Elem>> {
    Ok(canonical_mult_table(&CanonicalRing::plane(field, f)?))
}

/// Differential `⋀^k V (x) W -> ⋀^{k-1} V (x) W'` for a bilinear
/// multiplication `mult[i][j]` from `V x W` to `W'` of dimension `dst_dim`.
/// Rows index the target with the `W'` factor fastest.
fn koszul_matrix<F: Field>(
    field: &F,
    mult: &[Vec<Vec<F::Elem>>],
    k: usize,
    src_dim: usize,
    dst_dim: usize,
) -> Result<DenseMatrix<F::Elem>> {
    let g = mult.len();
    let top = Combinations::new(g, k)?;
    let low = Combinations::new(g, k - 1)?;
    let mut m = DenseMatrix::zeros(field, low.len() * dst_dim, top.len() * src_dim);
    for (ti, &mask) in top.masks().iter().enumerate() {
        for (i, rest, sign) in comultiply(mask) {
            let row0 = low.rank(rest) * dst_dim;
            for (j, column) in mult[i].iter().enumerate().take(src_dim) {
                let col = ti * src_dim + j;
                for (h, c) in column.iter().enumerate() {
                    if field.is_zero(c) {
                        continue;
                    }
                    let cur = &mut m[(row0 + h, col)];
                    *cur = if sign > 0 { field.add(cur, c) } else { field.sub(cur, c) };
                }
            }
        }
    }
    Ok(m)
}

/// The Koszul differential `⋀^k H^0(K) (x) H^0(K) -> ⋀^{k-1} H^0(K) (x) H^0(2K)`.
pub fn koszul_differential<F: Field>(
    field: &F,
    table: &CanonicalMultTable<F::Elem>,
    k: usize,
) -> Result<DenseMatrix<F::Elem>> {
    check_order(table.dim_h0k, k)?;
    koszul_matrix(field, &table.table, k, table.dim_h0k, table.dim_h02k)
}

/// `⋀^{k+1} V -> ⋀^k V (x) V`, `v_J -> sum_j (-1)^j v_{J - j_j} (x) v_{j_j}`.
pub fn wedge_map<F: Field>(field: &F, g: usize, k: usize) -> Result<DenseMatrix<F::Elem>> {
    let top = Combinations::new(g, k + 1)?;
    let low = Combinations::new(g, k)?;
    let mut m = DenseMatrix::zeros(field, low.len() * g, top.len());
    for (col, &mask) in top.masks().iter().enumerate() {
        for (j, rest, sign) in comultiply(mask) {
            m[(low.rank(rest) * g + j, col)] = field.from_i64(sign);
        }
    }
    Ok(m)
}

/// One step of the linear strand, `⋀^k V (x) H^0(mK) -> ⋀^{k-1} V (x) H^0((m+1)K)`.
pub fn strand_differential<F: Field>(
    ring: &CanonicalRing<F>,
    k: usize,
    m: usize,
) -> Result<DenseMatrix<F::Elem>> {
    let v = ring.piece(1);
    check_order(v.dim(), k)?;
    let src = ring.piece(m);
    let dst = ring.piece(m + 1);
    let mult = ring.multiplication(&v, &src, &dst);
    koszul_matrix(ring.field(), &mult, k, src.dim(), dst.dim())
}

fn check_order(g: usize, k: usize) -> Result<()> {
    if k == 0 || k > g {
        return Err(Error::OrderOutOfRange(format!("need 1 <= k <= {g}, got k = {k}")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KoszulReport {
    pub k: usize,
    pub dim_kernel: usize,
    pub dim_wedge_image: usize,
    pub equal: bool,
}

pub fn koszul_kernel_report<F: Field>(
    field: &F,
    table: &CanonicalMultTable<F::Elem>,
    k: usize,
) -> Result<KoszulReport> {
    let delta = koszul_differential(field, table, k)?;
    let dim_kernel = kernel(field, &delta).rank();
    let dim_wedge_image = if k < table.dim_h0k {
        rank(field, &wedge_map(field, table.dim_h0k, k)?)
    } else {
        0
    };
    Ok(KoszulReport {
        k,
        dim_kernel,
        dim_wedge_image,
        equal: dim_kernel == dim_wedge_image,
    })
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::exactla::{PrimeField, Rationals};
    use crate::ivhs::binomial;

    fn random_ring(d: usize, seed: u64) -> CanonicalRing<PrimeField> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fp = PrimeField::random(&mut rng);
        let (f, _) = BinaryForm::random_smooth(&fp, d, &mut rng).unwrap();
        CanonicalRing::plane(&fp, &f).unwrap()
    }

    #[test]
    fn table_dimensions() {
        for (d, dims) in [(4, (3, 6)), (5, (6, 15)), (6, (10, 27))] {
            let ring = random_ring(d, d as u64);
            let t = canonical_mult_table(&ring);
            assert_eq!((t.dim_h0k, t.dim_h02k), dims);
            assert_eq!(t.dim_h0k, ring.genus());
            assert_eq!(t.dim_h02k, 3 * ring.genus() - 3);
            assert!(t.is_symmetric());
        }
    }

    #[test]
    fn quartic_k1_kernel_is_the_wedge_image() {
        let q = Rationals;
        let f = BinaryForm::from_i64(&q, 4, &[(4, 0, 1), (0, 4, 1)]).unwrap();
        let t = canonical_mult_table_plane(&q, &f).unwrap();
        let r = koszul_kernel_report(&q, &t, 1).unwrap();
        assert_eq!(r, KoszulReport { k: 1, dim_kernel: 3, dim_wedge_image: 3, equal: true });
        for seed in 0..5 {
            let ring = random_ring(4, 50 + seed);
            let t = canonical_mult_table(&ring);
            let r = koszul_kernel_report(ring.field(), &t, 1).unwrap();
            assert!(r.equal);
            assert_eq!(r.dim_kernel, 3);
        }
    }

    #[test]
    fn general_ternary_quartic() {
        // the k = 1 statement does not need the cyclic symmetry
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let fp = PrimeField::random(&mut rng);
        let coeffs = (0..15).map(|_| fp.random(&mut rng)).collect();
        let ring = CanonicalRing::new(&fp, Poly::from_coeffs(Vars::Three, 4, coeffs)).unwrap();
        let r = koszul_kernel_report(&fp, &canonical_mult_table(&ring), 1).unwrap();
        assert!(r.equal);
    }

    #[test]
    fn wedge_image_lies_in_kernel() {
        for d in [4, 5] {
            let ring = random_ring(d, 70 + d as u64);
            let field = *ring.field();
            let t = canonical_mult_table(&ring);
            for k in 1..t.dim_h0k {
                let delta = koszul_differential(&field, &t, k).unwrap();
                let wedge = wedge_map(&field, t.dim_h0k, k).unwrap();
                assert!(delta.matmul(&field, &wedge).is_zero(&field), "d={d} k={k}");
                let r = koszul_kernel_report(&field, &t, k).unwrap();
                assert!(r.dim_wedge_image <= r.dim_kernel);
                // the wedge map is injective
                assert_eq!(r.dim_wedge_image, binomial(t.dim_h0k, k + 1));
            }
        }
    }

    #[test]
    fn strand_squares_to_zero() {
        for d in [4, 5] {
            let ring = random_ring(d, 90 + d as u64);
            let field = *ring.field();
            let g = ring.genus();
            for k in 2..=3.min(g) {
                for m in 0..=2 {
                    let first = strand_differential(&ring, k, m).unwrap();
                    let second = strand_differential(&ring, k - 1, m + 1).unwrap();
                    assert!(second.matmul(&field, &first).is_zero(&field), "d={d} k={k} m={m}");
                }
            }
        }
    }

    #[test]
    fn table_matches_strand_step() {
        let ring = random_ring(5, 3);
        let t = canonical_mult_table(&ring);
        for k in 1..=3 {
            assert_eq!(
                koszul_differential(ring.field(), &t, k).unwrap(),
                strand_differential(&ring, k, 1).unwrap()
            );
        }
    }

    #[test]
    fn top_order_and_ranges() {
        let ring = random_ring(4, 1);
        let field = *ring.field();
        let t = canonical_mult_table(&ring);
        let r = koszul_kernel_report(&field, &t, 3).unwrap();
        assert_eq!(r.dim_wedge_image, 0);
        assert_eq!(r.equal, r.dim_kernel == 0);
        assert!(koszul_kernel_report(&field, &t, 0).is_err());
        assert!(koszul_kernel_report(&field, &t, 4).is_err());
    }

    #[test]
    fn quintic_reports_are_consistent() {
        let ring = random_ring(5, 12);
        let field = *ring.field();
        let t = canonical_mult_table(&ring);
        let r = koszul_kernel_report(&field, &t, 3).unwrap();
        assert!(r.dim_kernel >= r.dim_wedge_image);
        assert_eq!(r.dim_wedge_image, binomial(6, 4));
    }
}

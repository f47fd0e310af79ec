//! Graded pieces of `k[X0, X1]` and `k[Y, X0, X1]`, the Jacobian ideals of a
//! binary form `f` and of `F = Y^d - f`, and normal forms in the quotients
//! `R_f` and `R_F`.
//!
//! Each Jacobian ideal is generated in the single degree `d - 1`, so its
//! degree-`k` part is the row space of generator-times-monomial vectors.
//! Row reduction with columns in graded lex order (`Y > X0 > X1`) picks the
//! leading monomials as pivots; the remaining *standard monomials* form a
//! basis of `R^k`.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exactla::{quotient, DenseMatrix, Field, QuotientSpace, Subspace};
use crate::par::{self, Exec};

/// Exponent triple `(Y, X0, X1)`.
pub type Exponents = [usize; 3];

/// Number of polynomial variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Vars {
    /// `X0, X1`
    Two,
    /// `Y, X0, X1`
    Three,
}

impl Vars {
    pub fn count(self) -> usize {
        match self {
            Vars::Two => 2,
            Vars::Three => 3,
        }
    }
}

/// The monomials of one degree in graded lex order, largest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonomialBasis {
    pub vars: Vars,
    pub degree: usize,
}

impl MonomialBasis {
    pub fn new(vars: Vars, degree: usize) -> Self {
        MonomialBasis { vars, degree }
    }

    pub fn len(&self) -> usize {
        let k = self.degree;
        match self.vars {
            Vars::Two => k + 1,
            Vars::Three => (k + 1) * (k + 2) / 2,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn exponents(&self, index: usize) -> Exponents {
        let k = self.degree;
        match self.vars {
            Vars::Two => [0, k - index, index],
            Vars::Three => {
                // block of Y-degree a starts at (k-a)(k-a+1)/2
                let mut t = 0;
                while (t + 1) * (t + 2) / 2 <= index {
                    t += 1;
                }
                let c = index - t * (t + 1) / 2;
                let a = k - t;
                [a, t - c, c]
            }
        }
    }

    pub fn index(&self, e: &Exponents) -> usize {
        debug_assert_eq!(e.iter().sum::<usize>(), self.degree);
        match self.vars {
            Vars::Two => {
                debug_assert_eq!(e[0], 0);
                e[2]
            }
            Vars::Three => {
                let t = self.degree - e[0];
                t * (t + 1) / 2 + e[2]
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Exponents> + '_ {
        (0..self.len()).map(|i| self.exponents(i))
    }
}

/// Human-readable monomial such as `Y*X0^2*X1`.
pub fn monomial_label(e: &Exponents) -> String {
    let names = ["Y", "X0", "X1"];
    let parts: Vec<String> = e
        .iter()
        .zip(names)
        .filter(|(&p, _)| p > 0)
        .map(|(&p, n)| if p == 1 { n.to_string() } else { format!("{n}^{p}") })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// A homogeneous polynomial stored densely in its [`MonomialBasis`].
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<E> {
    basis: MonomialBasis,
    coeffs: Vec<E>,
}

/// Homogeneous polynomial in `Y, X0, X1`.
pub type TernaryPolynomial<E> = Poly<E>;

impl<E: Clone + PartialEq> Poly<E> {
    pub fn zero<F: Field<Elem = E>>(field: &F, vars: Vars, degree: usize) -> Self {
        let basis = MonomialBasis::new(vars, degree);
        Poly {
            basis,
            coeffs: vec![field.zero(); basis.len()],
        }
    }

    pub fn monomial<F: Field<Elem = E>>(field: &F, vars: Vars, e: Exponents) -> Self {
        let mut p = Self::zero(field, vars, e.iter().sum());
        let i = p.basis.index(&e);
        p.coeffs[i] = field.one();
        p
    }

    pub fn from_coeffs(vars: Vars, degree: usize, coeffs: Vec<E>) -> Self {
        let basis = MonomialBasis::new(vars, degree);
        assert_eq!(coeffs.len(), basis.len(), "coefficient count must match the basis");
        Poly { basis, coeffs }
    }

    pub fn degree(&self) -> usize {
        self.basis.degree
    }

    pub fn vars(&self) -> Vars {
        self.basis.vars
    }

    pub fn basis(&self) -> MonomialBasis {
        self.basis
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn coeff(&self, e: &Exponents) -> &E {
        &self.coeffs[self.basis.index(e)]
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.coeffs.iter().all(|c| field.is_zero(c))
    }

    /// Reinterprets a polynomial in `X0, X1` as one in `Y, X0, X1`.
    pub fn to_three_vars<F: Field<Elem = E>>(&self, field: &F) -> Self {
        if self.vars() == Vars::Three {
            return self.clone();
        }
        let mut out = Self::zero(field, Vars::Three, self.degree());
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = self.basis.exponents(i);
            let j = out.basis.index(&e);
            out.coeffs[j] = c.clone();
        }
        out
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.basis, other.basis, "polynomials must share degree and variables");
        Poly {
            basis: self.basis,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| field.add(a, b))
                .collect(),
        }
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        Poly {
            basis: self.basis,
            coeffs: self.coeffs.iter().map(|a| field.mul(a, c)).collect(),
        }
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let vars = if self.vars() == Vars::Three || other.vars() == Vars::Three {
            Vars::Three
        } else {
            Vars::Two
        };
        let mut out = Self::zero(field, vars, self.degree() + other.degree());
        for (i, a) in self.coeffs.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            let ea = self.basis.exponents(i);
            for (j, b) in other.coeffs.iter().enumerate() {
                if field.is_zero(b) {
                    continue;
                }
                let eb = other.basis.exponents(j);
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                let k = out.basis.index(&e);
                out.coeffs[k] = field.add(&out.coeffs[k], &field.mul(a, b));
            }
        }
        out
    }

    /// Partial derivative with respect to variable `var` (0 = Y, 1 = X0, 2 = X1).
    pub fn partial<F: Field<Elem = E>>(&self, field: &F, var: usize) -> Self {
        let degree = self.degree().saturating_sub(1);
        let mut out = Self::zero(field, self.vars(), degree);
        if self.degree() == 0 {
            return out;
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            let mut e = self.basis.exponents(i);
            if e[var] == 0 || field.is_zero(c) {
                continue;
            }
            let m = field.from_i64(e[var] as i64);
            e[var] -= 1;
            let k = out.basis.index(&e);
            out.coeffs[k] = field.add(&out.coeffs[k], &field.mul(c, &m));
        }
        out
    }
}

/// A binary form `f(X0, X1)` of degree `d`; `coeffs[e0]` multiplies
/// `X0^e0 * X1^(d - e0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryForm<E> {
    degree: usize,
    coeffs: Vec<E>,
}

impl<E: Clone + PartialEq> BinaryForm<E> {
    pub fn new(degree: usize, coeffs: Vec<E>) -> Self {
        assert_eq!(coeffs.len(), degree + 1, "a degree-d form has d+1 coefficients");
        BinaryForm { degree, coeffs }
    }

    /// Builds `f` from `(e0, e1, c)` triples; unlisted monomials are zero.
    pub fn from_terms<F: Field<Elem = E>>(
        field: &F,
        degree: usize,
        terms: &[(usize, usize, E)],
    ) -> Result<Self> {
        let mut coeffs = vec![field.zero(); degree + 1];
        let mut seen = vec![false; degree + 1];
        for (e0, e1, c) in terms {
            if e0 + e1 != degree {
                return Err(Error::MalformedInput(format!(
                    "exponents ({e0}, {e1}) do not sum to d = {degree}"
                )));
            }
            if seen[*e0] {
                return Err(Error::MalformedInput(format!(
                    "duplicate exponent pair ({e0}, {e1})"
                )));
            }
            seen[*e0] = true;
            coeffs[*e0] = c.clone();
        }
        Ok(BinaryForm { degree, coeffs })
    }

    pub fn from_i64<F: Field<Elem = E>>(field: &F, degree: usize, terms: &[(usize, usize, i64)]) -> Result<Self> {
        let terms: Vec<_> = terms
            .iter()
            .map(|&(a, b, c)| (a, b, field.from_i64(c)))
            .collect();
        Self::from_terms(field, degree, &terms)
    }

    /// Coefficients drawn with [`Field::random`].
    pub fn random<F: Field<Elem = E>, R: Rng + ?Sized>(field: &F, degree: usize, rng: &mut R) -> Self {
        BinaryForm {
            degree,
            coeffs: (0..=degree).map(|_| field.random(rng)).collect(),
        }
    }

    /// Rejection-samples a squarefree form; returns it with the number of
    /// rejected draws.
    pub fn random_smooth<F: Field<Elem = E>, R: Rng + ?Sized>(
        field: &F,
        degree: usize,
        rng: &mut R,
    ) -> Result<(Self, usize)> {
        let mut rejections = 0;
        loop {
            let f = Self::random(field, degree, rng);
            if smoothness_check_binary(field, &f)? {
                return Ok((f, rejections));
            }
            rejections += 1;
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn to_poly(&self) -> Poly<E> {
        // binary basis index is the X1 exponent
        let coeffs = (0..=self.degree)
            .map(|c| self.coeffs[self.degree - c].clone())
            .collect();
        Poly::from_coeffs(Vars::Two, self.degree, coeffs)
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        BinaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| field.mul(a, c)).collect(),
        }
    }

    /// Nonzero terms as `(e0, e1, c)`.
    pub fn terms<F: Field<Elem = E>>(&self, field: &F) -> Vec<(usize, usize, String)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !field.is_zero(c))
            .map(|(e0, c)| (e0, self.degree - e0, field.format(c)))
            .collect()
    }

    /// SHA-256 of a canonical serialization of `(field, d, coefficients)`.
    pub fn digest<F: Field<Elem = E>>(&self, field: &F) -> String {
        let mut h = Sha256::new();
        h.update(format!("field={};d={};", field.spec(), self.degree));
        for c in &self.coeffs {
            h.update(field.format(c));
            h.update(";");
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl<E: fmt::Debug> fmt::Display for BinaryForm<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryForm(d={}, {:?})", self.degree, self.coeffs)
    }
}

/// Which Jacobian ring: of `f` in `k[X0, X1]` or of `F = Y^d - f` in
/// `k[Y, X0, X1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingKind {
    Binary,
    Plane,
}

/// `R^k = S^k / J^k` with its standard-monomial basis.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedQuotientPiece<E> {
    basis: MonomialBasis,
    quotient: QuotientSpace<E>,
}

impl<E: Clone + PartialEq> GradedQuotientPiece<E> {
    pub fn degree(&self) -> usize {
        self.basis.degree
    }

    pub fn vars(&self) -> Vars {
        self.basis.vars
    }

    pub fn monomials(&self) -> MonomialBasis {
        self.basis
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Echelon basis of `J^k` inside `S^k`.
    pub fn ideal_rows(&self) -> &Subspace<E> {
        self.quotient.denominator()
    }

    /// Monomial indices (in `S^k`) of the standard monomials.
    pub fn standard_monomials(&self) -> &[usize] {
        self.quotient.coset_rep_indices()
    }

    pub fn standard_exponents(&self, i: usize) -> Exponents {
        self.basis.exponents(self.standard_monomials()[i])
    }

    /// Y-degree of the `i`-th standard monomial.
    pub fn y_degree(&self, i: usize) -> usize {
        self.standard_exponents(i)[0]
    }

    /// Position of the standard monomial with exponents `e`, if `e` is standard.
    pub fn position_of(&self, e: &Exponents) -> Option<usize> {
        self.quotient.rep_position(self.basis.index(e))
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.dim())
            .map(|i| monomial_label(&self.standard_exponents(i)))
            .collect()
    }
}

/// Coordinates of a residue class in the standard-monomial basis of one piece.
#[derive(Debug, Clone, PartialEq)]
pub struct RingElementClass<E> {
    pub kind: RingKind,
    pub degree: usize,
    pub coords: Vec<E>,
}

impl<E: Clone + PartialEq> RingElementClass<E> {
    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.coords.iter().all(|c| field.is_zero(c))
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!((self.kind, self.degree), (other.kind, other.degree));
        RingElementClass {
            kind: self.kind,
            degree: self.degree,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| field.add(a, b))
                .collect(),
        }
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        RingElementClass {
            kind: self.kind,
            degree: self.degree,
            coords: self.coords.iter().map(|a| field.mul(a, c)).collect(),
        }
    }
}

/// The Jacobian ring `R_f` or `R_F`, with all pieces up to one past the
/// expected socle degree precomputed.
#[derive(Debug, Clone)]
pub struct JacobianRing<F: Field> {
    field: F,
    kind: RingKind,
    f: BinaryForm<F::Elem>,
    generators: Vec<Poly<F::Elem>>,
    pieces: Vec<Arc<GradedQuotientPiece<F::Elem>>>,
}

impl<F: Field> JacobianRing<F> {
    /// `R_f = k[X0, X1] / (df/dX0, df/dX1)`.
    pub fn binary(field: &F, f: &BinaryForm<F::Elem>) -> Result<Self> {
        Self::build(field, RingKind::Binary, f, Exec::default())
    }

    /// `R_F` for `F = Y^d - f`.
    pub fn plane(field: &F, f: &BinaryForm<F::Elem>) -> Result<Self> {
        Self::build(field, RingKind::Plane, f, Exec::default())
    }

    pub fn build(field: &F, kind: RingKind, f: &BinaryForm<F::Elem>, exec: Exec) -> Result<Self> {
        let d = f.degree();
        if d < 4 {
            return Err(Error::DegreeTooSmall(d));
        }
        let fp = f.to_poly();
        let generators = match kind {
            RingKind::Binary => vec![fp.partial(field, 1), fp.partial(field, 2)],
            RingKind::Plane => {
                let dy = Poly::monomial(field, Vars::Three, [d - 1, 0, 0]).scale(field, &field.from_i64(d as i64));
                let minus_one = field.from_i64(-1);
                vec![
                    dy,
                    fp.partial(field, 1).to_three_vars(field).scale(field, &minus_one),
                    fp.partial(field, 2).to_three_vars(field).scale(field, &minus_one),
                ]
            }
        };
        let mut ring = JacobianRing {
            field: field.clone(),
            kind,
            f: f.clone(),
            generators,
            pieces: Vec::new(),
        };
        let top = ring.socle_degree() + 1;
        ring.pieces = par::map_range(exec, top + 1, |k| Arc::new(ring.compute_piece(k)));
        Ok(ring)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn vars(&self) -> Vars {
        match self.kind {
            RingKind::Binary => Vars::Two,
            RingKind::Plane => Vars::Three,
        }
    }

    pub fn d(&self) -> usize {
        self.f.degree()
    }

    pub fn form(&self) -> &BinaryForm<F::Elem> {
        &self.f
    }

    /// Expected socle degree: `2d - 4` for `R_f`, `3d - 6` for `R_F`.
    pub fn socle_degree(&self) -> usize {
        let d = self.d();
        match self.kind {
            RingKind::Binary => 2 * d - 4,
            RingKind::Plane => 3 * d - 6,
        }
    }

    pub fn generators(&self) -> &[Poly<F::Elem>] {
        &self.generators
    }

    fn compute_piece(&self, k: usize) -> GradedQuotientPiece<F::Elem> {
        let field = &self.field;
        let basis = MonomialBasis::new(self.vars(), k);
        let gen_degree = self.d() - 1;
        let mut rows = Vec::new();
        if k >= gen_degree {
            let multipliers = MonomialBasis::new(self.vars(), k - gen_degree);
            for g in &self.generators {
                for e in multipliers.iter() {
                    let m = Poly::monomial(field, self.vars(), e);
                    rows.push(g.mul(field, &m).coeffs);
                }
            }
        }
        let ideal = Subspace::row_space_with(
            field,
            &DenseMatrix::from_rows(basis.len(), rows),
            Exec::Sequential,
        );
        GradedQuotientPiece {
            basis,
            quotient: quotient(field, basis.len(), &ideal),
        }
    }

    /// The degree-`k` piece; cached up to one past the socle degree.
    pub fn piece(&self, k: usize) -> Arc<GradedQuotientPiece<F::Elem>> {
        match self.pieces.get(k) {
            Some(p) => Arc::clone(p),
            None => Arc::new(self.compute_piece(k)),
        }
    }

    pub fn dim(&self, k: usize) -> usize {
        self.piece(k).dim()
    }

    /// Dimensions of `R^k` for `k = 0 ..= socle + 1`.
    pub fn hilbert_function(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.dim()).collect()
    }

    pub fn normal_form(&self, p: &Poly<F::Elem>) -> Result<RingElementClass<F::Elem>> {
        let piece = self.piece(p.degree());
        normal_form(&self.field, self.kind, p, &piece)
    }

    /// Class of the `i`-th standard monomial of degree `k`.
    pub fn basis_class(&self, k: usize, i: usize) -> RingElementClass<F::Elem> {
        let dim = self.dim(k);
        let mut coords = vec![self.field.zero(); dim];
        coords[i] = self.field.one();
        RingElementClass {
            kind: self.kind,
            degree: k,
            coords,
        }
    }

    pub fn one(&self) -> RingElementClass<F::Elem> {
        self.basis_class(0, 0)
    }

    pub fn zero_class(&self, k: usize) -> RingElementClass<F::Elem> {
        RingElementClass {
            kind: self.kind,
            degree: k,
            coords: vec![self.field.zero(); self.dim(k)],
        }
    }

    /// Class of the monomial with exponents `e`.
    pub fn monomial_class(&self, e: Exponents) -> RingElementClass<F::Elem> {
        let p = Poly::monomial(&self.field, self.vars(), e);
        self.normal_form(&p).expect("degree matches by construction")
    }

    /// Standard-monomial representative of a class.
    pub fn lift(&self, a: &RingElementClass<F::Elem>) -> Poly<F::Elem> {
        let piece = self.piece(a.degree);
        let coeffs = piece.quotient.lift(&self.field, &a.coords);
        Poly::from_coeffs(self.vars(), a.degree, coeffs)
    }

    pub fn multiply(
        &self,
        a: &RingElementClass<F::Elem>,
        b: &RingElementClass<F::Elem>,
    ) -> Result<RingElementClass<F::Elem>> {
        if a.kind != self.kind || b.kind != self.kind {
            return Err(Error::RingMismatch);
        }
        let prod = self.lift(a).mul(&self.field, &self.lift(b));
        self.normal_form(&prod)
    }

    /// Matrix of `v -> u * v` from `R^src_degree` to `R^(deg u + src_degree)`.
    pub fn multiplication_matrix(
        &self,
        u: &RingElementClass<F::Elem>,
        src_degree: usize,
    ) -> DenseMatrix<F::Elem> {
        let target = self.dim(u.degree + src_degree);
        let columns: Vec<Vec<F::Elem>> = (0..self.dim(src_degree))
            .map(|j| {
                self.multiply(u, &self.basis_class(src_degree, j))
                    .expect("same ring")
                    .coords
            })
            .collect();
        DenseMatrix::from_columns(target, &columns, self.field.zero())
    }
}

/// The class of `p` in the standard-monomial basis of `piece`.
pub fn normal_form<F: Field>(
    field: &F,
    kind: RingKind,
    p: &Poly<F::Elem>,
    piece: &GradedQuotientPiece<F::Elem>,
) -> Result<RingElementClass<F::Elem>> {
    if p.degree() != piece.degree() {
        return Err(Error::DegreeMismatch {
            expected: piece.degree(),
            found: p.degree(),
        });
    }
    let p = match (p.vars(), piece.vars()) {
        (Vars::Two, Vars::Three) => p.to_three_vars(field),
        (Vars::Three, Vars::Two) => return Err(Error::RingMismatch),
        _ => p.clone(),
    };
    Ok(RingElementClass {
        kind,
        degree: piece.degree(),
        coords: piece.quotient.project(field, &p.coeffs),
    })
}

pub fn jacobian_piece<F: Field>(ring: &JacobianRing<F>, k: usize) -> Arc<GradedQuotientPiece<F::Elem>> {
    ring.piece(k)
}

pub fn multiply_classes<F: Field>(
    ring: &JacobianRing<F>,
    a: &RingElementClass<F::Elem>,
    b: &RingElementClass<F::Elem>,
) -> Result<RingElementClass<F::Elem>> {
    ring.multiply(a, b)
}

/// Squarefreeness of `f`, certified by the Jacobian ring being Artinian with
/// a one-dimensional socle in degree `2d - 4`.
pub fn smoothness_check_binary<F: Field>(field: &F, f: &BinaryForm<F::Elem>) -> Result<bool> {
    let d = f.degree();
    if d < 4 {
        return Err(Error::DegreeTooSmall(d));
    }
    let ring = JacobianRing::build(field, RingKind::Binary, f, Exec::Sequential)?;
    Ok(ring.dim(2 * d - 3) == 0 && ring.dim(2 * d - 4) == 1)
}

/// Matrix of the multiplication pairing `R^a x R^b -> R^socle` in
/// standard-monomial bases, the socle being identified with the field through
/// its single standard monomial.
pub fn macaulay_pairing_matrix<F: Field>(
    ring: &JacobianRing<F>,
    a: usize,
    b: usize,
) -> Result<DenseMatrix<F::Elem>> {
    let socle = ring.socle_degree();
    if a + b != socle {
        return Err(Error::SocleDegreeMismatch { a, b, socle });
    }
    let field = ring.field();
    let (da, db) = (ring.dim(a), ring.dim(b));
    let socle_dim = ring.dim(socle);
    let mut m = DenseMatrix::zeros(field, da, db);
    if socle_dim == 0 {
        return Ok(m);
    }
    for i in 0..da {
        for j in 0..db {
            let prod = ring.multiply(&ring.basis_class(a, i), &ring.basis_class(b, j))?;
            m[(i, j)] = prod.coords[0].clone();
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{rank, rref, PrimeField, Rationals};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fermat<F: Field>(field: &F, d: usize) -> BinaryForm<F::Elem> {
        BinaryForm::from_i64(field, d, &[(d, 0, 1), (0, d, 1)]).unwrap()
    }

    #[test]
    fn monomial_indexing_roundtrip() {
        for vars in [Vars::Two, Vars::Three] {
            for k in 0..12 {
                let b = MonomialBasis::new(vars, k);
                let all: Vec<_> = b.iter().collect();
                assert_eq!(all.len(), b.len());
                for (i, e) in all.iter().enumerate() {
                    assert_eq!(b.index(e), i);
                }
                // graded lex, largest first
                assert!(all.windows(2).all(|w| w[0] > w[1]));
            }
        }
    }

    #[test]
    fn smoothness_examples() {
        let q = Rationals;
        assert!(smoothness_check_binary(&q, &fermat(&q, 4)).unwrap());
        let x0_4 = BinaryForm::from_i64(&q, 4, &[(4, 0, 1)]).unwrap();
        assert!(!smoothness_check_binary(&q, &x0_4).unwrap());
        let cubic = BinaryForm::from_i64(&q, 3, &[(3, 0, 1)]).unwrap();
        assert_eq!(smoothness_check_binary(&q, &cubic), Err(Error::DegreeTooSmall(3)));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let f = PrimeField::random(&mut rng);
            let g = BinaryForm::random(&f, 5, &mut rng);
            assert!(smoothness_check_binary(&f, &g).unwrap());
        }
    }

    #[test]
    fn fermat_quartic_pieces() {
        let q = Rationals;
        let f = fermat(&q, 4);
        let rf = JacobianRing::binary(&q, &f).unwrap();
        let p4 = rf.piece(4);
        assert_eq!(p4.dim(), 1);
        assert_eq!(p4.standard_exponents(0), [0, 2, 2]);
        let rfp = JacobianRing::plane(&q, &f).unwrap();
        assert_eq!(rfp.dim(1), 3);
        assert_eq!(rfp.dim(0), 1);
        assert_eq!(rf.dim(0), 1);
    }

    #[test]
    fn normal_form_examples() {
        let q = Rationals;
        let f = fermat(&q, 4);
        let rf = JacobianRing::binary(&q, &f).unwrap();
        // X0^3 X1^2 = (1/4) df/dX0 * X1^2
        let m = Poly::monomial(&q, Vars::Two, [0, 3, 2]);
        assert!(rf.normal_form(&m).unwrap().is_zero(&q));
        let std = Poly::monomial(&q, Vars::Two, [0, 2, 2]);
        assert_eq!(rf.normal_form(&std).unwrap().coords, vec![q.one()]);
        let gen = &rf.generators()[0];
        let mult = gen.mul(&q, &Poly::monomial(&q, Vars::Two, [0, 1, 1]));
        assert!(rf.normal_form(&mult).unwrap().is_zero(&q));
        assert_eq!(
            rf.normal_form(&Poly::monomial(&q, Vars::Two, [0, 1, 0])),
            Ok(rf.basis_class(1, 0))
        );
        let p4 = rf.piece(4);
        assert_eq!(
            normal_form(&q, RingKind::Binary, &m, &p4),
            Err(Error::DegreeMismatch { expected: 4, found: 5 })
        );
    }

    #[test]
    fn multiplication_examples() {
        let q = Rationals;
        let f = fermat(&q, 4);
        let rf = JacobianRing::binary(&q, &f).unwrap();
        let socle = rf.monomial_class([0, 2, 2]);
        let x0 = rf.monomial_class([0, 1, 0]);
        assert!(rf.multiply(&socle, &x0).unwrap().is_zero(&q));
        assert_eq!(rf.multiply(&socle, &rf.one()).unwrap(), socle);

        let rfp = JacobianRing::plane(&q, &f).unwrap();
        let y = rfp.monomial_class([1, 0, 0]);
        let s = rfp.monomial_class([0, 2, 2]);
        assert!(!rfp.multiply(&y, &s).unwrap().is_zero(&q));
        assert_eq!(rf.multiply(&y, &s), Err(Error::RingMismatch));
    }

    #[test]
    fn pairing_examples() {
        let q = Rationals;
        let rf = JacobianRing::binary(&q, &fermat(&q, 4)).unwrap();
        let m = macaulay_pairing_matrix(&rf, 4, 0).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 1));
        assert!(!q.is_zero(&m[(0, 0)]));
        assert_eq!(
            macaulay_pairing_matrix(&rf, 4, 1).unwrap_err(),
            Error::SocleDegreeMismatch { a: 4, b: 1, socle: 4 }
        );

        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let fp = PrimeField::random(&mut rng);
        let (g, _) = BinaryForm::random_smooth(&fp, 5, &mut rng).unwrap();
        let rg = JacobianRing::binary(&fp, &g).unwrap();
        let m = macaulay_pairing_matrix(&rg, 5, 1).unwrap();
        assert_eq!((m.rows(), m.cols(), rank(&fp, &m)), (2, 2, 2));

        let rfp = JacobianRing::plane(&q, &fermat(&q, 4)).unwrap();
        let m = macaulay_pairing_matrix(&rfp, 1, 5).unwrap();
        assert_eq!((m.rows(), m.cols(), rank(&q, &m)), (3, 3, 3));
    }

    #[test]
    fn file_terms_validation() {
        let q = Rationals;
        assert!(BinaryForm::from_i64(&q, 4, &[(4, 0, 1), (4, 0, 2)]).is_err());
        assert!(BinaryForm::from_i64(&q, 4, &[(3, 0, 1)]).is_err());
        let f = BinaryForm::from_i64(&q, 4, &[(1, 3, -2)]).unwrap();
        assert_eq!(f.terms(&q), vec![(1, 3, "-2".to_string())]);
    }

    #[test]
    fn plane_pieces_split_by_y_degree() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let fp = PrimeField::random(&mut rng);
        for d in 4..=6 {
            let (f, _) = BinaryForm::random_smooth(&fp, d, &mut rng).unwrap();
            let rf = JacobianRing::binary(&fp, &f).unwrap();
            let rfp = JacobianRing::plane(&fp, &f).unwrap();
            for k in 0..=rfp.socle_degree() + 1 {
                let piece = rfp.piece(k);
                for i in 0..=k.min(d - 2) {
                    let count = (0..piece.dim()).filter(|&j| piece.y_degree(j) == i).count();
                    assert_eq!(count, rf.dim(k - i), "d={d} k={k} i={i}");
                }
                assert!((0..piece.dim()).all(|j| piece.y_degree(j) <= d - 2));
            }
        }
    }

    // Independent oracle: solve p = sum(x_g * generator multiple) + sum(c_m * m)
    // by row reduction of the augmented system, reading c off the pivots.
    fn oracle_normal_form<F: Field>(ring: &JacobianRing<F>, p: &Poly<F::Elem>) -> Vec<F::Elem> {
        let field = ring.field();
        let k = p.degree();
        let basis = MonomialBasis::new(ring.vars(), k);
        let gd = ring.d() - 1;
        let mut columns = Vec::new();
        if k >= gd {
            for g in ring.generators() {
                for e in MonomialBasis::new(ring.vars(), k - gd).iter() {
                    columns.push(g.mul(field, &Poly::monomial(field, ring.vars(), e)).coeffs().to_vec());
                }
            }
        }
        let n_gen = columns.len();
        let piece = ring.piece(k);
        for &s in piece.standard_monomials() {
            let mut v = vec![field.zero(); basis.len()];
            v[s] = field.one();
            columns.push(v);
        }
        columns.push(p.coeffs().to_vec());
        let aug = DenseMatrix::from_columns(basis.len(), &columns, field.zero());
        let (r, pivots) = rref(field, &aug);
        let last = columns.len() - 1;
        assert!(!pivots.contains(&last), "system must be consistent");
        (0..piece.dim())
            .map(|i| {
                let col = n_gen + i;
                match pivots.iter().position(|&c| c == col) {
                    Some(row) => r[(row, last)].clone(),
                    None => field.zero(),
                }
            })
            .collect()
    }

    #[test]
    fn normal_form_matches_linear_solve_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for d in [4, 5] {
            let fp = PrimeField::random(&mut rng);
            let (f, _) = BinaryForm::random_smooth(&fp, d, &mut rng).unwrap();
            for ring in [JacobianRing::binary(&fp, &f).unwrap(), JacobianRing::plane(&fp, &f).unwrap()] {
                for k in [d - 1, d, 2 * d - 4] {
                    for _ in 0..50 {
                        let basis = MonomialBasis::new(ring.vars(), k);
                        let coeffs = (0..basis.len()).map(|_| fp.random(&mut rng)).collect();
                        let p = Poly::from_coeffs(ring.vars(), k, coeffs);
                        assert_eq!(ring.normal_form(&p).unwrap().coords, oracle_normal_form(&ring, &p));
                    }
                }
            }
        }
    }
}

//! Nonvanishing certificate for one smooth curve `Y^d = f(X0, X1)`.
//!
//! With `s = d - 3` the pipeline builds the subspaces `W`, `K`, `K1` and the
//! class `eta`, checks that `W` kills `K` and pairs perfectly with `K1`,
//! assembles the decomposable test element
//! `w = u_1 ^ .. ^ u_s (x) omega_1 ^ .. ^ omega_{s+1} (x) eta`,
//! verifies directly that `w` lies in the dual invariant space, and finally
//! checks that no nonzero class of `R^{d-4}_F` is annihilated by all of `W`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{determinant, kernel, DenseMatrix, Field, FieldSpec};
use crate::ivhs::{
    character_weights, contraction_110, dual_invariant_space, full_mask, Combinations,
    ExtTensorSpace, HodgeData, HodgePiece, KernelCondition, TangentChoice,
};
use crate::polyring::{smoothness_check_binary, BinaryForm, RingElementClass};

/// The subspaces and scalars attached to one smooth fiber.
#[derive(Debug, Clone)]
pub struct IkedaData<F: Field> {
    pub f: BinaryForm<F::Elem>,
    /// Carries the ring, the Hodge pieces and `W` as the tangent slice.
    pub hodge: HodgeData<F>,
    /// Basis of `S^{d-3}_X` inside `H^{1,0}`.
    pub k: Vec<RingElementClass<F::Elem>>,
    /// Basis of `Y S^{d-4}_X` inside `H^{1,0}`.
    pub k1: Vec<RingElementClass<F::Elem>>,
    pub eta: RingElementClass<F::Elem>,
    /// `u_i * mu_j = lambda[i][j] * eta`.
    pub lambda: DenseMatrix<F::Elem>,
}

impl<F: Field> IkedaData<F> {
    pub fn field(&self) -> &F {
        self.hodge.field()
    }

    pub fn d(&self) -> usize {
        self.hodge.d()
    }

    /// `s = d - 3 = dim W`.
    pub fn s(&self) -> usize {
        self.hodge.dim_t()
    }

    /// Adds to the first `K` vector a `K1` vector that some `u` does not kill,
    /// so that the vanishing check must fail. Used to exercise failure paths.
    pub fn corrupt_k(&mut self) {
        let field = self.hodge.field().clone();
        let j = (0..self.k1.len())
            .find(|&j| (0..self.lambda.rows()).any(|i| !field.is_zero(&self.lambda[(i, j)])))
            .unwrap_or(0);
        self.k[0] = self.k[0].add(&field, &self.k1[j]);
    }
}

/// Builds the data with the standard-monomial basis of `W`.
pub fn build_ikeda_data<F: Field>(field: &F, f: &BinaryForm<F::Elem>) -> Result<IkedaData<F>> {
    if f.degree() < 4 {
        return Err(Error::DegreeTooSmall(f.degree()));
    }
    if !smoothness_check_binary(field, f)? {
        return Err(Error::NotSmooth);
    }
    let hodge = HodgeData::new(field, f, TangentChoice::IkedaSlice)?;
    ikeda_data_from_hodge(hodge)
}

/// Builds the data for an explicit basis of `W` carried by `hodge`.
pub fn ikeda_data_from_hodge<F: Field>(hodge: HodgeData<F>) -> Result<IkedaData<F>> {
    let d = hodge.d();
    let ring = hodge.ring.clone();
    let field = ring.field().clone();
    let stratum = |piece: &crate::polyring::GradedQuotientPiece<F::Elem>, y: usize| {
        (0..piece.dim())
            .filter(|&i| piece.y_degree(i) == y)
            .map(|i| ring.basis_class(piece.degree(), i))
            .collect::<Vec<_>>()
    };
    let k = stratum(&hodge.h10, 0);
    let k1 = stratum(&hodge.h10, 1);
    let etas = stratum(&hodge.h01, 1);
    if k.len() != d - 2 || k1.len() != d - 3 || etas.len() != 1 || hodge.dim_t() != d - 3 {
        return Err(Error::NotSmooth);
    }
    let eta = etas.into_iter().next().expect("one element");
    let pivot = eta
        .coords
        .iter()
        .position(|c| !field.is_zero(c))
        .expect("eta is a basis class");
    let eta_inv = field.inv(&eta.coords[pivot]).expect("nonzero");

    let s = hodge.dim_t();
    let mut lambda = DenseMatrix::zeros(&field, s, k1.len());
    for i in 0..s {
        for (j, mu) in k1.iter().enumerate() {
            let prod = contraction_110(&hodge, &hodge.tangent.basis_w[i], mu)?;
            let c = field.mul(&prod.coords[pivot], &eta_inv);
            if prod != eta.scale(&field, &c) {
                return Err(Error::LambdaNotScalar { i, j });
            }
            lambda[(i, j)] = c;
        }
    }
    Ok(IkedaData {
        f: ring.form().clone(),
        hodge,
        k,
        k1,
        eta,
        lambda,
    })
}

/// Evidence attached to a failed check: a named vector, stored sparsely.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub check: String,
    pub indices: Vec<usize>,
    /// Nonzero `(coordinate, value)` pairs.
    pub entries: Vec<(usize, String)>,
}

impl Witness {
    fn new<F: Field>(field: &F, check: &str, indices: Vec<usize>, v: &[F::Elem]) -> Self {
        Witness {
            check: check.to_string(),
            indices,
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !field.is_zero(c))
                .map(|(i, c)| (i, field.format(c)))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub pass: bool,
    pub witness: Option<Witness>,
}

/// `u * omega = 0` for every `u` in `W` and `omega` in `K`.
pub fn check_lemma_i<F: Field>(data: &IkedaData<F>) -> Result<CheckOutcome> {
    let field = data.field();
    for (i, u) in data.hodge.tangent.basis_w.iter().enumerate() {
        for (j, omega) in data.k.iter().enumerate() {
            let prod = contraction_110(&data.hodge, u, omega)?;
            if !prod.is_zero(field) {
                return Ok(CheckOutcome {
                    pass: false,
                    witness: Some(Witness::new(field, "W kills K", vec![i, j], &prod.coords)),
                });
            }
        }
    }
    Ok(CheckOutcome { pass: true, witness: None })
}

#[derive(Debug, Clone, PartialEq)]
pub struct LambdaOutcome<E> {
    pub pass: bool,
    pub det: E,
}

/// `lambda` is invertible.
pub fn check_lemma_ii<F: Field>(data: &IkedaData<F>) -> LambdaOutcome<F::Elem> {
    let field = data.field();
    let det = determinant(field, &data.lambda);
    LambdaOutcome {
        pass: !field.is_zero(&det),
        det,
    }
}

/// Coordinates of the test element in `⋀^s T (x) ⋀^{s+1} H^{1,0} (x) H^{0,1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TestElement<E> {
    pub space: ExtTensorSpace,
    pub w: Vec<E>,
}

pub fn build_test_element<F: Field>(data: &IkedaData<F>) -> Result<TestElement<F::Elem>> {
    let field = data.field();
    let hodge = &data.hodge;
    let s = data.s();
    let p = data.k.len();
    let space = ExtTensorSpace::for_hodge(hodge, s, p, 1)?;
    let mut w = vec![field.zero(); space.dim()];
    let t_mask = full_mask(s);
    let subsets = Combinations::new(hodge.g, p)?;
    // omega_1 ^ .. ^ omega_p = sum over P of the P-minor of the K matrix times e_P
    for &pm in subsets.masks() {
        let cols: Vec<usize> = crate::ivhs::exterior::indices(pm).collect();
        let minor = DenseMatrix::from_rows(
            p,
            data.k
                .iter()
                .map(|omega| cols.iter().map(|&c| omega.coords[c].clone()).collect())
                .collect(),
        );
        let det = determinant(field, &minor);
        if field.is_zero(&det) {
            continue;
        }
        for (h, c) in data.eta.coords.iter().enumerate() {
            if !field.is_zero(c) {
                w[space.index_of(t_mask, pm, 1 << h)] = field.mul(&det, c);
            }
        }
    }
    Ok(TestElement { space, w })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipOutcome {
    pub pass: bool,
    /// Set when `s = 1`, where the comultiplication is the identity.
    pub note: Option<String>,
    pub witness: Option<Witness>,
}

/// Projects every slot of the comultiplied `w` to the quotient and requires
/// zero.
pub fn check_kernel_membership<F: Field>(
    data: &IkedaData<F>,
    test: &TestElement<F::Elem>,
) -> Result<MembershipOutcome> {
    let condition = KernelCondition::new(&data.hodge, data.s())?;
    Ok(membership_with(data.field(), &condition, test))
}

fn membership_with<F: Field>(
    field: &F,
    condition: &KernelCondition<F::Elem>,
    test: &TestElement<F::Elem>,
) -> MembershipOutcome {
    let residuals = condition.residuals(field, &test.w);
    let failed = residuals
        .iter()
        .position(|r| r.iter().any(|x| !field.is_zero(x)));
    MembershipOutcome {
        pass: failed.is_none(),
        note: (condition.s == 1).then(|| "s=1: comultiplication is the identity on T".to_string()),
        witness: failed.map(|k| Witness::new(field, "kernel membership residual", vec![k], &residuals[k])),
    }
}

/// Dimension of `{v in R^{d-4}_F : u v = 0 for all u in W}`.
pub fn annihilator_dim<F: Field>(data: &IkedaData<F>) -> usize {
    let field = data.field();
    let ring = &data.hodge.ring;
    let d = data.d();
    let src = d - 4;
    let stacked = data
        .hodge
        .tangent
        .basis_w
        .iter()
        .map(|u| ring.multiplication_matrix(u, src))
        .reduce(|a, b| a.vstack(&b))
        .unwrap_or_else(|| DenseMatrix::zeros(field, 0, ring.dim(src)));
    kernel(field, &stacked).rank()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EigenspaceDims {
    pub h10_weight_d_minus_2: usize,
    pub h01_weight_2: usize,
}

pub const VERDICT_CERTIFIED: &str = "certified";
pub const VERDICT_CERTIFIED_S1: &str = "certified (s=1: outside the s >= 2 range)";
pub const VERDICT_NOT_CERTIFIED: &str = "not certified";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonvanishingCertificate {
    pub d: usize,
    pub field: FieldSpec,
    pub f_digest: String,
    pub lemma_i_pass: bool,
    pub lemma_ii_pass: bool,
    pub det_lambda: String,
    pub kernel_membership_pass: bool,
    pub eigenspace_dims: EigenspaceDims,
    pub annihilator_dim: usize,
    pub verdict: String,
    pub witnesses: Vec<Witness>,
    /// Dimension of the kernel containing `w`; informational.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant_kernel_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl NonvanishingCertificate {
    pub fn is_certified(&self) -> bool {
        self.verdict != VERDICT_NOT_CERTIFIED
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VerifyOptions {
    /// Also compute the full kernel dimension (slower for large `d`).
    pub kernel_dim: bool,
}

pub fn verify_nonvanishing<F: Field>(data: &IkedaData<F>) -> Result<NonvanishingCertificate> {
    verify_nonvanishing_with(data, VerifyOptions::default())
}

pub fn verify_nonvanishing_with<F: Field>(
    data: &IkedaData<F>,
    options: VerifyOptions,
) -> Result<NonvanishingCertificate> {
    let field = data.field();
    let d = data.d();
    let mut witnesses = Vec::new();

    let lemma_i = check_lemma_i(data)?;
    witnesses.extend(lemma_i.witness.clone());
    let lemma_ii = check_lemma_ii(data);
    if !lemma_ii.pass {
        let flat: Vec<F::Elem> = data.lambda.entries().to_vec();
        witnesses.push(Witness::new(field, "lambda matrix", vec![data.lambda.rows()], &flat));
    }

    let test = build_test_element(data)?;
    let (membership, invariant_kernel_dim) = if options.kernel_dim {
        let space = dual_invariant_space(data.s(), &data.hodge)?;
        let m = membership_with(field, &space.condition, &test);
        (m, Some(space.kernel.rank()))
    } else {
        (check_kernel_membership(data, &test)?, None)
    };
    witnesses.extend(membership.witness.clone());

    let weights = character_weights(&data.hodge);
    let eigenspace_dims = EigenspaceDims {
        h10_weight_d_minus_2: weights.eigenspace_dim(HodgePiece::H10, d - 2),
        h01_weight_2: weights.eigenspace_dim(HodgePiece::H01, 2),
    };
    let annihilator_dim = annihilator_dim(data);

    let all_pass = lemma_i.pass
        && lemma_ii.pass
        && membership.pass
        && eigenspace_dims.h10_weight_d_minus_2 == 1
        && eigenspace_dims.h01_weight_2 == 1
        && annihilator_dim == 0;
    let verdict = match (all_pass, data.s()) {
        (false, _) => VERDICT_NOT_CERTIFIED,
        (true, 1) => VERDICT_CERTIFIED_S1,
        (true, _) => VERDICT_CERTIFIED,
    };
    Ok(NonvanishingCertificate {
        d,
        field: field.spec(),
        f_digest: data.f.digest(field),
        lemma_i_pass: lemma_i.pass,
        lemma_ii_pass: lemma_ii.pass,
        det_lambda: field.format(&lemma_ii.det),
        kernel_membership_pass: membership.pass,
        eigenspace_dims,
        annihilator_dim,
        verdict: verdict.to_string(),
        witnesses,
        invariant_kernel_dim,
        note: membership.note,
    })
}

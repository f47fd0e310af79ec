use std::sync::Arc;

use serde_json::{json, Value};

use crate::exactla::{rank, Field};
use crate::ikeda::{build_ikeda_data, verify_nonvanishing_with, VerifyOptions, VERDICT_CERTIFIED};
use crate::ivhs::{transposed_nabla, HodgeData, TangentChoice};
use crate::koszul::{canonical_mult_table_plane, koszul_differential, koszul_kernel_report, wedge_map};
use crate::polyring::{
    macaulay_pairing_matrix, smoothness_check_binary, BinaryForm, GradedQuotientPiece, JacobianRing,
    RingElementClass,
};
use crate::Error;

use super::input::Source;
use super::report::{CheckRecord, RunReport, Status};
use super::{field_name, write_json, CliError, Command, TangentArg};

fn malformed(e: Error) -> CliError {
    CliError::Malformed(e.to_string())
}

pub(super) fn run_command<F: Field>(
    field: &F,
    f: &BinaryForm<F::Elem>,
    command: &Command,
    source: Source,
) -> Result<RunReport, CliError> {
    let d = f.degree();
    if d < 4 {
        return Err(malformed(Error::DegreeTooSmall(d)));
    }
    let smooth = smoothness_check_binary(field, f).map_err(malformed)?;
    let smooth_check = CheckRecord::pass_if("smooth", smooth);
    let (checks, result) = match command {
        Command::RingInfo => ring_info(field, f, smooth_check)?,
        _ if !smooth => (vec![smooth_check], Value::Null),
        Command::Macaulay => macaulay(field, f, smooth_check)?,
        Command::IkedaVerify { kernel_dim, corrupt } => ikeda_verify(field, f, *kernel_dim, *corrupt, smooth_check)?,
        Command::Koszul { k } => koszul(field, f, *k, smooth_check)?,
        Command::NablaDump { a, p, q, tangent, out } => {
            let (checks, result) = nabla_dump(field, f, (*a, *p, *q), *tangent, smooth_check)?;
            if let Some(path) = out {
                write_json(path, &result)?;
            }
            (checks, result)
        }
    };
    Ok(RunReport {
        source,
        field: field_name(field),
        d,
        f_digest: f.digest(field),
        f_terms: f.terms(field),
        checks,
        result,
        timing_ms: None,
    })
}

type Outcome = Result<(Vec<CheckRecord>, Value), CliError>;

fn ring_info<F: Field>(field: &F, f: &BinaryForm<F::Elem>, smooth: CheckRecord) -> Outcome {
    let d = f.degree();
    let binary = JacobianRing::binary(field, f).map_err(malformed)?;
    let plane = JacobianRing::plane(field, f).map_err(malformed)?;
    let g = d * (d - 3) / 2 + 1;
    let (h10, h01) = (plane.dim(d - 3), plane.dim(2 * d - 3));
    let (top, past) = (binary.dim(2 * d - 4), binary.dim(2 * d - 3));
    let hilbert = CheckRecord::pass_if("hilbert_identities", h10 == g && h01 == g && top == 1 && past == 0)
        .dim("g", g)
        .dim("dim_RF_d-3", h10)
        .dim("dim_RF_2d-3", h01)
        .dim("dim_Rf_2d-4", top)
        .dim("dim_Rf_2d-3", past);
    let result = json!({
        "g": g,
        "socle_degree_binary": binary.socle_degree(),
        "socle_degree_plane": plane.socle_degree(),
        "hilbert_binary": binary.hilbert_function(),
        "hilbert_plane": plane.hilbert_function(),
    });
    Ok((vec![smooth, hilbert], result))
}

fn pairing_ranks<F: Field>(ring: &JacobianRing<F>) -> Result<(bool, Vec<Value>), CliError> {
    let socle = ring.socle_degree();
    let mut all_full = true;
    let mut rows = Vec::new();
    for a in 0..=socle {
        let m = macaulay_pairing_matrix(ring, a, socle - a).map_err(malformed)?;
        let r = rank(ring.field(), &m);
        let full = r == m.rows() && r == m.cols();
        all_full &= full;
        rows.push(json!({ "a": a, "b": socle - a, "dim_a": m.rows(), "dim_b": m.cols(), "rank": r }));
    }
    Ok((all_full, rows))
}

fn macaulay<F: Field>(field: &F, f: &BinaryForm<F::Elem>, smooth: CheckRecord) -> Outcome {
    let binary = JacobianRing::binary(field, f).map_err(malformed)?;
    let plane = JacobianRing::plane(field, f).map_err(malformed)?;
    let (bin_ok, bin_rows) = pairing_ranks(&binary)?;
    let (plane_ok, plane_rows) = pairing_ranks(&plane)?;
    let checks = vec![
        smooth,
        CheckRecord::pass_if("pairing_binary_full_rank", bin_ok).dim("socle_degree", binary.socle_degree()),
        CheckRecord::pass_if("pairing_plane_full_rank", plane_ok).dim("socle_degree", plane.socle_degree()),
    ];
    Ok((checks, json!({ "binary": bin_rows, "plane": plane_rows })))
}

fn ikeda_verify<F: Field>(
    field: &F,
    f: &BinaryForm<F::Elem>,
    kernel_dim: bool,
    corrupt: bool,
    smooth: CheckRecord,
) -> Outcome {
    let mut data = match build_ikeda_data(field, f) {
        Ok(data) => data,
        Err(e @ Error::LambdaNotScalar { .. }) => {
            let mut c = CheckRecord::new("lambda_scalar", Status::Fail);
            c.note = Some(e.to_string());
            return Ok((vec![smooth, c], Value::Null));
        }
        Err(e) => return Err(malformed(e)),
    };
    if corrupt {
        data.corrupt_k();
    }
    let cert = verify_nonvanishing_with(&data, VerifyOptions { kernel_dim }).map_err(malformed)?;
    let by_check = |name: &str| {
        cert.witnesses
            .iter()
            .filter(|w| w.check == name)
            .cloned()
            .collect::<Vec<_>>()
    };
    let s = data.s();
    let mut membership = CheckRecord::pass_if("kernel_membership", cert.kernel_membership_pass)
        .dim("s", s)
        .witnesses(by_check("kernel membership residual"));
    membership.note = cert.note.clone();
    if let Some(k) = cert.invariant_kernel_dim {
        membership = membership.dim("kernel_dim", k);
    }
    let mut certified = CheckRecord::pass_if("certified", cert.is_certified());
    if cert.verdict != VERDICT_CERTIFIED {
        certified.note = Some(cert.verdict.clone());
    }
    let checks = vec![
        smooth,
        CheckRecord::pass_if("w_kills_k", cert.lemma_i_pass)
            .dim("dim_w", s)
            .dim("dim_k", data.k.len())
            .witnesses(by_check("W kills K")),
        CheckRecord::pass_if("lambda_invertible", cert.lemma_ii_pass)
            .dim("dim_w", s)
            .dim("dim_k1", data.k1.len())
            .witnesses(by_check("lambda matrix")),
        membership,
        CheckRecord::pass_if(
            "eigenspaces_one_dimensional",
            cert.eigenspace_dims.h10_weight_d_minus_2 == 1 && cert.eigenspace_dims.h01_weight_2 == 1,
        )
        .dim("h10_weight_d_minus_2", cert.eigenspace_dims.h10_weight_d_minus_2)
        .dim("h01_weight_2", cert.eigenspace_dims.h01_weight_2),
        CheckRecord::pass_if("annihilator_zero", cert.annihilator_dim == 0).dim("annihilator_dim", cert.annihilator_dim),
        certified,
    ];
    let result = serde_json::to_value(&cert).expect("certificate serializes");
    Ok((checks, result))
}

fn koszul<F: Field>(field: &F, f: &BinaryForm<F::Elem>, k: usize, smooth: CheckRecord) -> Outcome {
    let d = f.degree();
    let table = canonical_mult_table_plane(field, f).map_err(malformed)?;
    let report = koszul_kernel_report(field, &table, k).map_err(malformed)?;
    let composite_zero = if k < table.dim_h0k {
        let delta = koszul_differential(field, &table, k).map_err(malformed)?;
        let wedge = wedge_map(field, table.dim_h0k, k).map_err(malformed)?;
        delta.matmul(field, &wedge).is_zero(field)
    } else {
        true
    };
    let asserted = d == 4;
    let equality = CheckRecord::new(
        "kernel_equals_wedge_image",
        match (asserted, report.equal) {
            (false, _) => Status::Info,
            (true, true) => Status::Pass,
            (true, false) => Status::Fail,
        },
    )
    .dim("dim_kernel", report.dim_kernel)
    .dim("dim_wedge_image", report.dim_wedge_image);
    let checks = vec![
        smooth,
        CheckRecord::pass_if("wedge_image_in_kernel", composite_zero)
            .dim("g", table.dim_h0k)
            .dim("dim_h0_2k", table.dim_h02k),
        equality,
    ];
    let result = json!({
        "g": table.dim_h0k,
        "dim_h0_2k": table.dim_h02k,
        "asserted": asserted,
        "report": report,
    });
    Ok((checks, result))
}

/// `c*m + ...` in standard monomials.
fn class_label<F: Field>(field: &F, piece: &GradedQuotientPiece<F::Elem>, class: &RingElementClass<F::Elem>) -> String {
    let labels = piece.labels();
    let terms: Vec<String> = class
        .coords
        .iter()
        .enumerate()
        .filter(|(_, c)| !field.is_zero(c))
        .map(|(i, c)| {
            if field.is_one(c) {
                labels[i].clone()
            } else {
                format!("{}*{}", field.format(c), labels[i])
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

fn nabla_dump<F: Field>(
    field: &F,
    f: &BinaryForm<F::Elem>,
    (a, p, q): (usize, usize, usize),
    tangent: TangentArg,
    smooth: CheckRecord,
) -> Outcome {
    let choice = match tangent {
        TangentArg::Slice => TangentChoice::IkedaSlice,
        TangentArg::Full => TangentChoice::FullPlane,
    };
    let hodge = HodgeData::new(field, f, choice).map_err(malformed)?;
    let map = transposed_nabla(&hodge, a, p, q).map_err(malformed)?;
    let ambient = Arc::clone(&hodge.tangent.ambient);
    let tangent_labels: Vec<String> = hodge
        .tangent
        .basis_w
        .iter()
        .map(|u| class_label(field, &ambient, u))
        .collect();
    let mut entries = Vec::new();
    for r in 0..map.matrix.rows() {
        for c in 0..map.matrix.cols() {
            let v = &map.matrix[(r, c)];
            if !field.is_zero(v) {
                entries.push(json!([r, c, field.format(v)]));
            }
        }
    }
    let map_rank = rank(field, &map.matrix);
    let mut checks = vec![
        smooth,
        CheckRecord::new("nabla_map", Status::Info)
            .dim("source_dim", map.source.dim())
            .dim("target_dim", map.target.dim())
            .dim("rank", map_rank),
    ];
    if (a, p, q) == (1, 1, 0) {
        checks.push(CheckRecord::pass_if(
            "base_case_matches_contraction",
            map.matrix == hodge.contraction_matrix(),
        ));
    }
    let result = json!({
        "orders": { "a": a, "p": p, "q": q },
        "field": field_name(field),
        "rows": map.matrix.rows(),
        "cols": map.matrix.cols(),
        "rank": map_rank,
        "basis": {
            "tangent": tangent_labels,
            "h10": hodge.h10.labels(),
            "h01": hodge.h01.labels(),
        },
        "source_legend": (0..map.source.dim()).map(|i| map.source.label(i)).collect::<Vec<_>>(),
        "target_legend": (0..map.target.dim()).map(|i| map.target.label(i)).collect::<Vec<_>>(),
        "entries": entries,
    });
    Ok((checks, result))
}

//! Where the binary form comes from: a polynomial file or a seeded sampler.

use std::path::{Path, PathBuf};

use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exactla::{parse_rational, rational_to_prime, Field, FieldSpec, PrimeField, Rationals};
use crate::polyring::BinaryForm;

use super::CliError;

/// On-disk polynomial description, JSON or TOML.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct PolyFile {
    pub d: usize,
    #[serde(default)]
    pub field: Option<String>,
    /// `[e0, e1, c]` means `c * X0^e0 * X1^e1`.
    pub f_coeffs: Vec<(usize, usize, Coeff)>,
}

/// A coefficient given as an integer or as a string such as `"-3/4"`.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Text(String),
}

impl Coeff {
    fn to_rational(&self) -> Option<BigRational> {
        match self {
            Coeff::Int(v) => Some(BigRational::from_integer((*v).into())),
            Coeff::Text(s) => parse_rational(s),
        }
    }
}

impl PolyFile {
    pub fn parse(text: &str, path: &Path) -> Result<Self, CliError> {
        let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
        let parsed = match ext {
            "toml" => toml::from_str(text).map_err(|e| e.to_string()),
            "json" => serde_json::from_str(text).map_err(|e| e.to_string()),
            _ => serde_json::from_str(text)
                .map_err(|e| e.to_string())
                .or_else(|_| toml::from_str(text).map_err(|e| e.to_string())),
        };
        parsed.map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))?;
        Self::parse(&text, path)
    }

    fn rational_terms(&self) -> Result<Vec<(usize, usize, BigRational)>, CliError> {
        self.f_coeffs
            .iter()
            .map(|(e0, e1, c)| {
                c.to_rational()
                    .map(|r| (*e0, *e1, r))
                    .ok_or_else(|| CliError::Malformed(format!("bad coefficient {c:?}")))
            })
            .collect()
    }
}

/// A binary form over one of the two supported fields.
#[derive(Debug, Clone)]
pub enum AnyForm {
    Prime(PrimeField, BinaryForm<u64>),
    Rational(BinaryForm<BigRational>),
}

impl AnyForm {
    pub fn spec(&self) -> FieldSpec {
        match self {
            AnyForm::Prime(fp, _) => fp.spec(),
            AnyForm::Rational(_) => FieldSpec::Rationals,
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            AnyForm::Prime(_, f) => f.degree(),
            AnyForm::Rational(f) => f.degree(),
        }
    }
}

/// Field object for a parsed spec.
fn prime_field(spec: FieldSpec) -> Result<Option<PrimeField>, CliError> {
    match spec {
        FieldSpec::Rationals => Ok(None),
        FieldSpec::PrimeField { modulus } => PrimeField::new(modulus)
            .map(Some)
            .map_err(|e| CliError::Malformed(e.to_string())),
    }
}

pub fn parse_field(s: &str) -> Result<FieldSpec, CliError> {
    s.parse::<FieldSpec>().map_err(|e| CliError::Malformed(e.to_string()))
}

/// Reads a polynomial file, reconciling it with `--d` and `--field`.
pub fn form_from_file(
    path: &Path,
    d_flag: Option<usize>,
    field_flag: Option<FieldSpec>,
) -> Result<AnyForm, CliError> {
    let file = PolyFile::read(path)?;
    if let Some(d) = d_flag {
        if d != file.d {
            return Err(CliError::Malformed(format!(
                "--d {d} disagrees with d = {} in {}",
                file.d,
                path.display()
            )));
        }
    }
    let file_field = file.field.as_deref().map(parse_field).transpose()?;
    let spec = match (file_field, field_flag) {
        (Some(a), Some(b)) if a != b => {
            return Err(CliError::Malformed(format!(
                "--field {b} disagrees with field = {a} in {}",
                path.display()
            )))
        }
        (Some(a), _) => a,
        (None, Some(b)) => b,
        (None, None) => FieldSpec::Rationals,
    };
    let terms = file.rational_terms()?;
    let malformed = |e: crate::Error| CliError::Malformed(e.to_string());
    match prime_field(spec)? {
        None => Ok(AnyForm::Rational(
            BinaryForm::from_terms(&Rationals, file.d, &terms).map_err(malformed)?,
        )),
        Some(fp) => {
            let reduced = terms
                .iter()
                .map(|(e0, e1, r)| {
                    rational_to_prime(&fp, r)
                        .map(|c| (*e0, *e1, c))
                        .ok_or_else(|| CliError::Malformed(format!("coefficient {r} has no residue mod {}", fp.modulus())))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(AnyForm::Prime(fp, BinaryForm::from_terms(&fp, file.d, &reduced).map_err(malformed)?))
        }
    }
}

/// A smooth form sampled from `seed`, with the number of rejected draws.
///
/// Without `--field` the prime is itself drawn from the seed, before the
/// coefficients.
pub fn random_form(d: usize, seed: u64, field_flag: Option<FieldSpec>) -> Result<(AnyForm, usize), CliError> {
    if d < 4 {
        return Err(CliError::Malformed(crate::Error::DegreeTooSmall(d).to_string()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let malformed = |e: crate::Error| CliError::Malformed(e.to_string());
    match field_flag {
        Some(FieldSpec::Rationals) => {
            let (f, rejections) = BinaryForm::random_smooth(&Rationals, d, &mut rng).map_err(malformed)?;
            Ok((AnyForm::Rational(f), rejections))
        }
        Some(spec) => {
            let fp = prime_field(spec)?.expect("prime spec");
            let (f, rejections) = BinaryForm::random_smooth(&fp, d, &mut rng).map_err(malformed)?;
            Ok((AnyForm::Prime(fp, f), rejections))
        }
        None => {
            let fp = PrimeField::random(&mut rng);
            let (f, rejections) = BinaryForm::random_smooth(&fp, d, &mut rng).map_err(malformed)?;
            Ok((AnyForm::Prime(fp, f), rejections))
        }
    }
}

/// Echo of where the form came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Source {
    File { path: PathBuf },
    Random { seed: u64, rejections: usize },
}

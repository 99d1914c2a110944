//! The diagonal experiment: `Y ×_S Y` in Segre coordinates, Euler
//! characteristics of the thickened diagonals `O/I_Δⁿ`, their graded
//! pieces and the resulting values of the correction term.

mod scenario;

use std::path::PathBuf;
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use scenario::{Adapted, DiagonalScenario};

use crate::error::{Error, GroebnerStats, Result};
use crate::groebner::{buchberger, canonical_hash, Budget, GbCacheEntry, Ideal, ALGORITHM_VERSION};
use crate::hilbert::{from_leading_exponents, HilbertData};
use crate::numeric::{Field, Rational};
use crate::polyring::{MonomialOrder, Polynomial};
use crate::rrcombinatorics::gti_coefficients;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Computed,
    Imported,
}

/// `χ_n = χ(O/I_Δⁿ)` for `n = 1..len`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiSequence {
    values: Vec<i64>,
    provenance: Vec<Provenance>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ChiFile {
    n_start: i64,
    chi: Vec<i64>,
}

impl ChiSequence {
    pub fn new(values: Vec<i64>, provenance: Provenance) -> Self {
        let provenance = vec![provenance; values.len()];
        ChiSequence { values, provenance }
    }

    /// Parses `{"n_start": 1, "chi": [...]}` with integer entries.
    pub fn import(json: &str) -> Result<Self> {
        let file: ChiFile =
            serde_json::from_str(json).map_err(|e| Error::InvalidInput(format!("χ table: {e}")))?;
        if file.n_start != 1 {
            return Err(Error::InvalidInput(format!(
                "χ table must start at n = 1, not {}",
                file.n_start
            )));
        }
        if file.chi.is_empty() {
            return Err(Error::InvalidInput("χ table is empty".into()));
        }
        Ok(Self::new(file.chi, Provenance::Imported))
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `χ_n` for `n >= 1`.
    pub fn get(&self, n: usize) -> Option<i64> {
        n.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"n_start": 1, "chi": self.values})
    }
}

/// Parses a χ table in the import format.
pub fn import_chi(json: &str) -> Result<ChiSequence> {
    ChiSequence::import(json)
}

/// `a_k = χ(I^k/I^{k+1}) = χ_{k+1} - χ_k` with `χ_0 = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GradedPieces(pub Vec<i64>);

pub fn graded_pieces(chi: &ChiSequence) -> GradedPieces {
    let mut prev = 0;
    GradedPieces(
        chi.values
            .iter()
            .map(|c| {
                let a = c - prev;
                prev = *c;
                a
            })
            .collect(),
    )
}

/// `χ(GTI(δ, λ)) = (-1)^λ Σ_u c_u(δ) a_{u+λ} + Σ_{k<λ} (-1)^k a_k`.
pub fn chi_gti(a: &GradedPieces, delta: usize, lambda: usize) -> Result<Rational> {
    let g = gti_coefficients(delta, lambda);
    if a.0.len() < g.support_len() {
        return Err(Error::OutOfRange(format!(
            "δ = {delta}, λ = {lambda} needs χ up to n = {}, table has {}",
            g.support_len(),
            a.0.len()
        )));
    }
    Ok((0..g.support_len())
        .map(|k| g.weight(k) * Rational::from(a.0[k]))
        .sum())
}

/// The point from which a sequence is constant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stabilization {
    pub lambda_star: usize,
    pub value: Rational,
    pub matches_reference: Option<bool>,
    /// Always `"empirical"`: constancy on a finite window proves nothing
    /// about larger λ.
    pub status: String,
}

/// Smallest `λ*` such that `g_λ = g_{λ*}` for all later `λ` in the
/// window; `None` when the last two values differ.
pub fn detect_stabilization(
    values: &[Rational],
    reference: Option<&Rational>,
) -> Option<Stabilization> {
    let last = values.last()?;
    if values.len() >= 2 && &values[values.len() - 2] != last {
        return None;
    }
    let lambda_star = values.iter().rposition(|v| v != last).map_or(0, |i| i + 1);
    Some(Stabilization {
        lambda_star,
        value: last.clone(),
        matches_reference: reference.map(|r| r == last),
        status: "empirical".into(),
    })
}

/// `χ(GTI(δ, λ))` for every λ the table supports, with stabilization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GtiChiReport {
    pub delta: usize,
    pub values: Vec<Rational>,
    pub stabilization: Option<Stabilization>,
    /// `χ_1 = χ(Y, O_Y)`.
    pub reference: Option<i64>,
}

pub fn gti_chi_report(chi: &ChiSequence, delta: usize) -> Result<GtiChiReport> {
    let a = graded_pieces(chi);
    if a.0.len() < delta + 1 {
        return Err(Error::OutOfRange(format!(
            "δ = {delta} needs χ up to n = {}, table has {}",
            delta + 1,
            a.0.len()
        )));
    }
    let values = (0..=a.0.len() - delta - 1)
        .map(|l| chi_gti(&a, delta, l))
        .collect::<Result<Vec<_>>>()?;
    let reference = chi.get(1);
    let reference_q = reference.map(Rational::from);
    Ok(GtiChiReport {
        delta,
        stabilization: detect_stabilization(&values, reference_q.as_ref()),
        values,
        reference,
    })
}

/// Settings for [`chi_sequence`].
#[derive(Clone, Debug)]
pub struct ChiOptions {
    pub n_max: u32,
    /// Applied separately to the ambient basis and to every `n`.
    pub budget: Budget,
    pub cache_dir: Option<PathBuf>,
}

/// Per-entry bookkeeping of a run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiEntry {
    pub n: u32,
    pub chi: i64,
    pub cached: bool,
    pub elapsed_ms: u128,
    pub stats: Option<GroebnerStats>,
}

/// Where a run stopped short of `n_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gap {
    pub n: u32,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiRun {
    pub sequence: ChiSequence,
    pub entries: Vec<ChiEntry>,
    pub requested: u32,
    pub gap: Option<Gap>,
}

impl ChiRun {
    pub fn is_complete(&self) -> bool {
        self.gap.is_none()
    }
}

fn exponents<C: Field>(gb: &crate::groebner::GroebnerBasis<C>) -> Vec<Vec<u32>> {
    gb.leading_monomials()
        .iter()
        .map(|m| m.exponents().to_vec())
        .collect()
}

/// Computes `χ(O/(J + Lⁿ))` for `n = 1..n_max`, reusing the basis of `J`
/// and the on-disk cache. Budget exhaustion at some `n` ends the run;
/// entries `1..n-1` stay valid and the gap is reported.
pub fn chi_sequence<C: Field>(s: &DiagonalScenario<C>, opts: &ChiOptions) -> Result<ChiRun> {
    if opts.n_max == 0 {
        return Err(Error::InvalidInput("n_max must be at least 1".into()));
    }
    let ring = s.ring();
    let lin = Ideal::new(ring, s.diagonal().to_vec())?;
    let mut ambient_gb = None;
    let mut values = Vec::new();
    let mut entries = Vec::new();
    let mut gap = None;

    for n in 1..=opts.n_max {
        let start = Instant::now();
        let power = lin.power(n)?;
        let mut all: Vec<Polynomial<C>> = s.ambient().generators().to_vec();
        all.extend(power.generators().iter().cloned());
        let hash = canonical_hash(ring, &all);

        let hit = opts
            .cache_dir
            .as_ref()
            .and_then(|dir| GbCacheEntry::load(dir, &hash, Some(n)))
            .and_then(|e| {
                let hd = from_leading_exponents(ring, &e.basis_leading_monomials).ok()?;
                (hd.numerator == e.hilbert_numerator).then_some(hd)
            });
        if let Some(hd) = hit {
            values.push(hd.chi);
            entries.push(ChiEntry {
                n,
                chi: hd.chi,
                cached: true,
                elapsed_ms: start.elapsed().as_millis(),
                stats: None,
            });
            continue;
        }

        if ambient_gb.is_none() {
            match buchberger(s.ambient(), MonomialOrder::Grevlex, &opts.budget) {
                Ok(g) => ambient_gb = Some(g),
                Err(Error::BudgetExhausted { reason, .. }) => {
                    gap = Some(Gap {
                        n,
                        reason: format!("ambient ideal: {reason}"),
                    });
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        let base = ambient_gb.as_ref().expect("computed above");
        let gb = match base.extend(power.generators(), &opts.budget) {
            Ok(g) => g,
            Err(Error::BudgetExhausted { reason, .. }) => {
                gap = Some(Gap { n, reason });
                break;
            }
            Err(e) => return Err(e),
        };
        let hd = HilbertData::of_groebner_basis(&gb)?;
        let elapsed = start.elapsed().as_millis();
        if let Some(dir) = &opts.cache_dir {
            let entry = GbCacheEntry {
                input_hash: hash,
                algorithm_version: ALGORITHM_VERSION.into(),
                order: MonomialOrder::Grevlex.name().into(),
                char: ring.characteristic(),
                vars: ring.vars().to_vec(),
                basis_leading_monomials: exponents(&gb),
                hilbert_numerator: hd.numerator.clone(),
                wall_time_ms: elapsed,
            };
            entry.store(dir, Some(n))?;
        }
        values.push(hd.chi);
        entries.push(ChiEntry {
            n,
            chi: hd.chi,
            cached: false,
            elapsed_ms: elapsed,
            stats: Some(gb.stats().clone()),
        });
    }

    Ok(ChiRun {
        sequence: ChiSequence::new(values, Provenance::Computed),
        entries,
        requested: opts.n_max,
        gap,
    })
}

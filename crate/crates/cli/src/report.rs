//! JSON report shapes. Every rational is a `"p/q"` string.

use serde::{Serialize, Serializer};

use tcmg_core::oracle::ExcessProfile;
use tcmg_core::{
    Coalition, CoreDescription, Edge, Imputation, LeastCoreResult, Matching, MembershipVerdict,
    MigEquilibrium, NucleolusResult, NucleolusRound, Rational,
};
use tcmg_lp::format_rational;

pub const SCHEMA: &str = "tcmg-report/1";

/// `"p/q"` with `q > 0` and `gcd(p, q) = 1`.
pub struct Q<'a>(pub &'a Rational);

impl Serialize for Q<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(self.0))
    }
}

#[derive(Serialize)]
pub struct Input {
    pub n: usize,
    pub m: usize,
    #[serde(rename = "T", skip_serializing_if = "Option::is_none")]
    pub threshold: Option<usize>,
}

#[derive(Serialize)]
pub struct Report<R: Serialize> {
    pub schema: &'static str,
    pub input: Input,
    pub method: String,
    pub result: R,
    pub rounds: Vec<Round>,
    pub certificate: Vec<Matching>,
    /// `None` under `--no-time`, keeping output byte-identical across runs.
    pub time_ms: Option<u64>,
}

#[derive(Serialize)]
pub struct Round {
    #[serde(serialize_with = "q_field")]
    pub epsilon: Rational,
    pub fixed_edges: Vec<Edge>,
    pub fixed_vertices: Vec<usize>,
    pub fixed_coalitions: Vec<Coalition>,
}

pub fn q_field<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    Q(r).serialize(s)
}

fn q_option<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => Q(r).serialize(s),
        None => s.serialize_none(),
    }
}

impl From<&NucleolusRound> for Round {
    fn from(r: &NucleolusRound) -> Round {
        Round {
            epsilon: r.epsilon.clone(),
            fixed_edges: r.fixed_edges.clone(),
            fixed_vertices: r.fixed_vertices.clone(),
            fixed_coalitions: r.fixed_coalitions.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct CorePayload {
    pub nonempty: bool,
    pub veto_players: Coalition,
    pub nucleolus: Option<Imputation>,
}

impl From<CoreDescription> for CorePayload {
    fn from(c: CoreDescription) -> CorePayload {
        CorePayload {
            nonempty: c.nonempty,
            veto_players: c.veto_players,
            nucleolus: c.core_nucleolus,
        }
    }
}

#[derive(Serialize)]
pub struct LeastCorePayload {
    #[serde(serialize_with = "q_field")]
    pub epsilon: Rational,
    pub point: Imputation,
}

impl From<&LeastCoreResult> for LeastCorePayload {
    fn from(r: &LeastCoreResult) -> LeastCorePayload {
        LeastCorePayload {
            epsilon: r.epsilon.clone(),
            point: r.point.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct NucleolusPayload {
    pub point: Imputation,
    /// Threshold of the program whose rounds are listed.
    pub solved_threshold: usize,
    #[serde(serialize_with = "q_option")]
    pub first_round_epsilon: Option<Rational>,
}

impl From<&NucleolusResult> for NucleolusPayload {
    fn from(r: &NucleolusResult) -> NucleolusPayload {
        NucleolusPayload {
            point: r.point.clone(),
            solved_threshold: r.solved_threshold,
            first_round_epsilon: r.first_round_epsilon.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct Weighted {
    pub matching: Matching,
    #[serde(serialize_with = "q_field")]
    pub weight: Rational,
}

#[derive(Serialize)]
pub struct MigPayload {
    #[serde(serialize_with = "q_field")]
    pub alpha: Rational,
    pub interceptor: Imputation,
    pub matcher: Option<Vec<Weighted>>,
    #[serde(serialize_with = "q_option")]
    pub delta: Option<Rational>,
}

impl From<MigEquilibrium> for MigPayload {
    fn from(m: MigEquilibrium) -> MigPayload {
        MigPayload {
            alpha: m.alpha,
            interceptor: m.interceptor,
            matcher: m
                .matcher
                .map(|y| y.into_iter().map(|(matching, weight)| Weighted { matching, weight }).collect()),
            delta: m.delta,
        }
    }
}

#[derive(Serialize)]
pub struct VerifyPayload {
    pub accepted: bool,
    #[serde(serialize_with = "q_field")]
    pub epsilon: Rational,
    #[serde(serialize_with = "q_field")]
    pub min_cost: Rational,
    pub minimizer: Matching,
}

impl VerifyPayload {
    pub fn new(v: &MembershipVerdict, epsilon: &Rational) -> VerifyPayload {
        VerifyPayload {
            accepted: v.accepted,
            epsilon: epsilon.clone(),
            min_cost: v.min_cost.clone(),
            minimizer: v.minimizer.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct ExcessEntry {
    pub coalition: Coalition,
    #[serde(serialize_with = "q_field")]
    pub excess: Rational,
}

pub fn excess_entries(p: &ExcessProfile) -> Vec<ExcessEntry> {
    p.entries
        .iter()
        .map(|(s, e)| ExcessEntry {
            coalition: s.clone(),
            excess: e.clone(),
        })
        .collect()
}

#[derive(Serialize)]
pub struct FieldDiff {
    pub field: &'static str,
    pub oracle: serde_json::Value,
    pub fast: serde_json::Value,
    pub equal: bool,
}

#[derive(Serialize)]
pub struct Comparison<O: Serialize, F: Serialize> {
    pub identical: bool,
    pub fast_method: String,
    pub oracle: O,
    pub fast: F,
    pub diff: Vec<FieldDiff>,
}

pub fn rational_value(r: &Rational) -> serde_json::Value {
    serde_json::Value::String(format_rational(r))
}

pub fn point_value(x: &Imputation) -> serde_json::Value {
    serde_json::to_value(x).expect("imputations serialize")
}

//! JSON batch front-end. Each command takes one JSON document and produces
//! one JSON document plus an exit code:
//!
//! - `0`: computed;
//! - `1`: domain error (invalid fan, infeasible input);
//! - `2`: parse or schema error.
//!
//! Every response is rendered through [`serde_json::Value`], whose maps keep
//! keys sorted, so output is byte-stable and the sections of `report.full`
//! are byte-identical to the individual commands.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use chainfold::chain_moduli::{enumerate_stable, is_stable, moduli_report, SplittingType, Stability, StableClass};
use chainfold::cox::{all_stabilizers, equivariant_quotient_dims, git_flags, irrelevant_collections, CoxData};
use chainfold::fan::Fan;
use chainfold::rational::{fmt_q, IVec};
use chainfold::stacky_fan::{complete_cone, StackyFan, StackyFanJson};
use chainfold::vinberg::{cox_vinberg_dims_for_fan, Dominance, VinbergLatticeData};
use chainfold::{Error, RootDatum, RootDatumSpec};

pub const COMMANDS: &[&str] = &[
    "group.define",
    "fan.validate",
    "fan.classify",
    "fan.complete",
    "stability.check",
    "stability.enumerate",
    "cox.data",
    "vinberg.query",
    "report.full",
];

#[derive(Clone, Debug, PartialEq)]
pub struct Response {
    pub body: Value,
    pub exit_code: i32,
}

impl Response {
    /// Compact JSON followed by a newline.
    pub fn render(&self) -> String {
        render(&self.body)
    }
}

pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("values always serialize");
    s.push('\n');
    s
}

#[derive(Clone, Debug, PartialEq)]
enum Failure {
    /// Exit 2.
    Schema { invariant: &'static str, detail: String },
    /// Exit 1, with an optional structured counterexample.
    Domain { invariant: String, detail: String, evidence: Option<Value> },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::UnknownLabel(_) => Failure::Schema { invariant: e.kind(), detail: e.to_string() },
            _ => Failure::Domain { invariant: e.kind().into(), detail: e.to_string(), evidence: None },
        }
    }
}

type Outcome = std::result::Result<Value, Failure>;

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("values always serialize")
}

fn parse<T: DeserializeOwned>(payload: &Value) -> std::result::Result<T, Failure> {
    serde_json::from_value(payload.clone()).map_err(|e| Failure::Schema { invariant: "schema", detail: e.to_string() })
}

/// Parses `input` and dispatches `command`.
pub fn run(command: &str, input: &str) -> Response {
    let outcome = serde_json::from_str::<Value>(input)
        .map_err(|e| Failure::Schema { invariant: "json", detail: e.to_string() })
        .and_then(|payload| dispatch(command, &payload));
    match outcome {
        Ok(body) => Response { body, exit_code: 0 },
        Err(Failure::Schema { invariant, detail }) => {
            Response { body: json!({"error": {"invariant": invariant, "detail": detail}}), exit_code: 2 }
        }
        Err(Failure::Domain { invariant, detail, evidence }) => {
            let mut err = json!({"invariant": invariant, "detail": detail});
            if let Some(ev) = evidence {
                err["evidence"] = ev;
            }
            Response { body: json!({ "error": err }), exit_code: 1 }
        }
    }
}

fn dispatch(command: &str, payload: &Value) -> Outcome {
    match command {
        "group.define" => group_define(&parse::<GroupRequest>(payload)?.group.build()?),
        "fan.validate" => {
            let req: FanRequest = parse(payload)?;
            let (report, valid) = fan_validate(&req.stacky_fan()?);
            if valid {
                Ok(report)
            } else {
                Err(invalid_fan(report))
            }
        }
        "fan.classify" => fan_classify(&req_valid_fan(payload)?),
        "fan.complete" => {
            let req: CompleteRequest = parse(payload)?;
            fan_complete(&req.group.build()?, &req.cone.generators)
        }
        "stability.check" => {
            let req: CheckRequest = parse(payload)?;
            let fan = valid_fan(FanRequest { group: req.group, fan: req.fan }.stacky_fan()?)?;
            stability_check(&fan, &req.splitting_type)
        }
        "stability.enumerate" => stability_enumerate(&req_valid_fan(payload)?),
        "cox.data" => {
            let req: CoxRequest = parse(payload)?;
            let fan = req.fan()?;
            let report = fan.validate();
            if !report.valid {
                return Err(invalid_fan(to_value(&report)));
            }
            cox_data(&fan)
        }
        "vinberg.query" => {
            let req: VinbergRequest = parse(payload)?;
            let v = VinbergLatticeData::with_dominance(req.group.build()?, req.dominance.unwrap_or_default());
            Ok(to_value(&v.query(&req.lambda, &req.mu)?))
        }
        "report.full" => report_full(&req_valid_fan(payload)?),
        other => Err(Failure::Schema {
            invariant: "unknown_command",
            detail: format!("unknown command {other:?}; expected one of {}", COMMANDS.join(", ")),
        }),
    }
}

fn invalid_fan(report: Value) -> Failure {
    let first = report["issues"][0]["kind"].as_str().unwrap_or("invalid_fan").to_string();
    Failure::Domain { invariant: first, detail: "the fan violates the listed invariants".into(), evidence: Some(report) }
}

fn valid_fan(fan: StackyFan) -> std::result::Result<StackyFan, Failure> {
    let (report, valid) = fan_validate(&fan);
    if valid {
        Ok(fan)
    } else {
        Err(invalid_fan(report))
    }
}

fn req_valid_fan(payload: &Value) -> std::result::Result<StackyFan, Failure> {
    valid_fan(parse::<FanRequest>(payload)?.stacky_fan()?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupRequest {
    group: RootDatumSpec,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FanRequest {
    group: RootDatumSpec,
    fan: StackyFanJson,
}

impl FanRequest {
    fn stacky_fan(&self) -> chainfold::Result<StackyFan> {
        StackyFan::from_json(self.group.build()?, &self.fan)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Generators {
    generators: Vec<IVec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CompleteRequest {
    group: RootDatumSpec,
    cone: Generators,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CheckRequest {
    group: RootDatumSpec,
    fan: StackyFanJson,
    splitting_type: SplittingType,
}

/// `group` fixes the ambient rank; without it the rank is read off the rays.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CoxRequest {
    #[serde(default)]
    group: Option<RootDatumSpec>,
    fan: StackyFanJson,
}

impl CoxRequest {
    fn fan(&self) -> std::result::Result<Fan, Failure> {
        let ambient = match (&self.group, self.fan.ray_vectors.first()) {
            (Some(g), _) => g.build()?.rank(),
            (None, Some(v)) => v.len(),
            (None, None) => {
                return Err(Failure::Schema { invariant: "schema", detail: "a fan without rays needs a group".into() })
            }
        };
        Ok(Fan::new(ambient, self.fan.ray_vectors.clone(), self.fan.maximal_cones.clone()))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VinbergRequest {
    group: RootDatumSpec,
    lambda: IVec,
    mu: IVec,
    #[serde(default)]
    dominance: Option<Dominance>,
}

fn group_define(rd: &RootDatum) -> Outcome {
    let weyl_order = rd.weyl_group().ok().map(|g| g.len());
    let longest_word = rd.longest_element().ok().map(|w| w.word().to_vec());
    let coweights: Vec<Vec<String>> = rd.fundamental_coweights().iter().map(|w| w.iter().map(fmt_q).collect()).collect();
    Ok(json!({
        "label": rd.label(),
        "rank": rd.rank(),
        "semisimple_rank": rd.semisimple_rank(),
        "central_rank": rd.central_rank(),
        "simple_roots": rd.simple_roots(),
        "simple_coroots": rd.simple_coroots(),
        "cartan_matrix": rd.cartan_matrix(),
        "positive_roots": rd.positive_roots()?,
        "fundamental_coweights": coweights,
        "weyl_order": weyl_order,
        "longest_word": longest_word,
    }))
}

fn fan_validate(fan: &StackyFan) -> (Value, bool) {
    let mut report = fan.validate();
    report.issues.sort();
    (to_value(&report), report.valid)
}

fn fan_classify(fan: &StackyFan) -> Outcome {
    Ok(to_value(&fan.classify()?))
}

fn fan_complete(rd: &RootDatum, generators: &[IVec]) -> Outcome {
    let c = complete_cone(rd, generators)?;
    let adjoined: Vec<Vec<String>> = c.adjoined.iter().map(|v| v.iter().map(fmt_q).collect()).collect();
    Ok(json!({
        "fan": c.fan.to_json(),
        "cone_rays": c.cone_rays,
        "epsilon": fmt_q(&c.epsilon),
        "delta": fmt_q(&c.delta),
        "adjoined": adjoined,
        "non_primitive_input": c.non_primitive_input,
    }))
}

fn stability_check(fan: &StackyFan, st: &SplittingType) -> Outcome {
    Ok(match is_stable(st, fan)? {
        Stability::Stable(w) => json!({"stable": true, "witness": w}),
        Stability::Unstable(reason) => json!({"stable": false, "reason": reason.as_str()}),
    })
}

fn stable_classes(fan: &StackyFan) -> std::result::Result<Vec<StableClass>, Failure> {
    let mut out = Vec::new();
    for st in enumerate_stable(fan) {
        match is_stable(&st, fan)? {
            Stability::Stable(witness) => out.push(StableClass { entries: st.entries, witness }),
            Stability::Unstable(r) => {
                return Err(Failure::Domain {
                    invariant: "census_consistency".into(),
                    detail: format!("class {:?} fails stability ({})", st.entries, r.as_str()),
                    evidence: None,
                })
            }
        }
    }
    Ok(out)
}

fn stability_enumerate(fan: &StackyFan) -> Outcome {
    let classes = stable_classes(fan)?;
    Ok(json!({"count": classes.len(), "classes": classes}))
}

fn cox_data(fan: &Fan) -> Outcome {
    let cox = CoxData::from_fan(fan)?;
    let stabilizers: Vec<Value> = all_stabilizers(&cox, fan)?
        .into_iter()
        .map(|(s, st)| json!({"vanishing": s, "free_rank": st.free_rank, "invariant_factors": st.invariant_factors}))
        .collect();
    Ok(json!({
        "matrix": cox.matrix,
        "matrix_rank": cox.matrix_rank,
        "free_rank": cox.free_rank,
        "invariant_factors": cox.invariant_factors,
        "kernel_basis": cox.kernel_basis,
        "exact_at_t": cox.exact_at_t,
        "irrelevant_collections": irrelevant_collections(fan),
        "stabilizers": stabilizers,
        "quotient": equivariant_quotient_dims(&cox),
        "git": git_flags(fan)?,
    }))
}

fn report_full(fan: &StackyFan) -> Outcome {
    let report = moduli_report(fan)?;
    Ok(json!({
        "kind": report.kind,
        "n_cones": report.n_cones,
        "n_orbits": report.n_orbits,
        "n_stable": report.n_stable,
        "group": group_define(fan.root_datum())?,
        "validation": fan_validate(fan).0,
        "classification": fan_classify(fan)?,
        "orbits": to_value(&report.coarse_orbits),
        "stability": stability_enumerate(fan)?,
        "cox": cox_data(fan.fan())?,
        "dimensions": to_value(&cox_vinberg_dims_for_fan(fan.root_datum(), fan.fan())?),
    }))
}

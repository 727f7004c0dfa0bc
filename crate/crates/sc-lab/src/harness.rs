//! Verification harness: measure one combined construction against its
//! predicted bound, sweep (m,n,p) grids, search role assignments, and emit
//! CSV or JSON reports.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{bound, BoundQuery};
use crate::construct::{build_tree_capped, BoolOp, OpTree};
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::witness::{brzozowski, family, BrzozowskiSpec, Shape, TransformRole};

/// Default ceiling on materialized states per product. Sized so the
/// (3,3,4) cat-of-boolean runs complete while 2^{np} blowups beyond desk
/// scale need an explicit opt-in.
pub const DEFAULT_MAX_STATES: usize = 2_000_000;

/// One measured grid point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub shape: Shape,
    pub ops: Vec<BoolOp>,
    pub m: usize,
    pub n: usize,
    pub p: usize,
    /// Closed-form prediction, absent when none exists.
    pub predicted: Option<u128>,
    /// Minimized state count.
    pub measured: Option<u64>,
    /// Materialized (reachable) state count before minimization.
    pub reachable: Option<u64>,
    /// True when predicted equals measured; vacuously true without a
    /// prediction.
    #[serde(rename = "match")]
    pub matched: bool,
    pub wall_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// The expression tree a shape verifies, over operand indices 0,1,2.
pub fn shape_tree(shape: Shape, ops: &[BoolOp]) -> Result<OpTree> {
    if ops.len() != shape.op_count() {
        return Err(Error::BadQuery(format!(
            "shape {shape} takes {} boolean op(s), got {}",
            shape.op_count(),
            ops.len()
        )));
    }
    let leaf = |i| OpTree::Leaf(i);
    Ok(match shape {
        Shape::DoubleCat => OpTree::cat(OpTree::cat(leaf(0), leaf(1)), leaf(2)),
        Shape::BoolBool => {
            OpTree::bool_op(ops[1], OpTree::bool_op(ops[0], leaf(0), leaf(1)), leaf(2))
        }
        Shape::CatOfBool => OpTree::cat(leaf(0), OpTree::bool_op(ops[0], leaf(1), leaf(2))),
        Shape::BoolThenCat => OpTree::cat(OpTree::bool_op(ops[0], leaf(0), leaf(1)), leaf(2)),
        Shape::CatThenBool => OpTree::bool_op(ops[0], OpTree::cat(leaf(0), leaf(1)), leaf(2)),
    })
}

/// Builds the witness at (m,n,p), constructs the combined DFA, minimizes,
/// and compares against the closed form when one exists.
pub fn verify(shape: Shape, ops: &[BoolOp], m: usize, n: usize, p: usize) -> Result<ExperimentRow> {
    verify_capped(shape, ops, m, n, p, DEFAULT_MAX_STATES)
}

pub fn verify_capped(
    shape: Shape,
    ops: &[BoolOp],
    m: usize,
    n: usize,
    p: usize,
    max_states: usize,
) -> Result<ExperimentRow> {
    let start = Instant::now();
    let tree = shape_tree(shape, ops)?;
    let operands = family(shape, m, n, p)?.build()?;
    let refs: Vec<&Dfa> = operands.iter().collect();
    let built = build_tree_capped(&tree, &refs, max_states)?;
    let reachable = built.dfa.state_count() as u64;
    let measured = built.dfa.state_complexity() as u64;
    assert!(measured <= reachable);

    let predicted = if ops.iter().any(|op| matches!(op, BoolOp::Custom(_))) {
        None
    } else {
        bound(&BoundQuery::new(shape, ops.to_vec(), m, n, p)?).value()
    };
    let matched = predicted.map_or(true, |value| value == measured as u128);

    Ok(ExperimentRow {
        shape,
        ops: ops.to_vec(),
        m,
        n,
        p,
        predicted,
        measured: Some(measured),
        reachable: Some(reachable),
        matched,
        wall_ms: start.elapsed().as_millis() as u64,
        error: None,
    })
}

fn error_row(
    shape: Shape,
    ops: &[BoolOp],
    m: usize,
    n: usize,
    p: usize,
    started: Instant,
    err: Error,
) -> ExperimentRow {
    ExperimentRow {
        shape,
        ops: ops.to_vec(),
        m,
        n,
        p,
        predicted: None,
        measured: None,
        reachable: None,
        matched: false,
        wall_ms: started.elapsed().as_millis() as u64,
        error: Some(err.to_string()),
    }
}

/// One row per grid point of the inclusive ranges, in lexicographic
/// (m,n,p) order. Points run in parallel; per-point failures land in the
/// row's `error` field instead of aborting the sweep.
pub fn sweep(
    shape: Shape,
    ops: &[BoolOp],
    m_range: (usize, usize),
    n_range: (usize, usize),
    p_range: (usize, usize),
    max_states: usize,
) -> Vec<ExperimentRow> {
    let mut points = Vec::new();
    for m in m_range.0..=m_range.1 {
        for n in n_range.0..=n_range.1 {
            for p in p_range.0..=p_range.1 {
                points.push((m, n, p));
            }
        }
    }
    points
        .into_par_iter()
        .map(|(m, n, p)| {
            let started = Instant::now();
            verify_capped(shape, ops, m, n, p, max_states)
                .unwrap_or_else(|err| error_row(shape, ops, m, n, p, started, err))
        })
        .collect()
}

/// A space of Brzozowski role assignments to try against a target bound.
#[derive(Clone, Debug)]
pub struct SearchSpace {
    pub alphabet: Vec<String>,
    /// Allowed roles per component, per letter (outer index component 0..3,
    /// inner index letter).
    pub allowed: [Vec<Vec<TransformRole>>; 3],
    pub m: usize,
    pub n: usize,
    pub p: usize,
    pub target: BoundQuery,
}

impl SearchSpace {
    pub fn new(
        alphabet: Vec<String>,
        allowed: [Vec<Vec<TransformRole>>; 3],
        target: BoundQuery,
    ) -> Result<SearchSpace> {
        if alphabet.is_empty() || alphabet.len() > 4 {
            return Err(Error::BadQuery(format!(
                "search alphabets carry 1 to 4 letters, got {}",
                alphabet.len()
            )));
        }
        for (component, letters) in allowed.iter().enumerate() {
            if letters.len() != alphabet.len() {
                return Err(Error::BadQuery(format!(
                    "component {component} lists roles for {} letters, alphabet has {}",
                    letters.len(),
                    alphabet.len()
                )));
            }
            if letters.iter().any(|roles| roles.is_empty()) {
                return Err(Error::BadQuery(format!(
                    "component {component} has a letter with no allowed roles"
                )));
            }
        }
        let (m, n, p) = (target.m, target.n, target.p);
        Ok(SearchSpace {
            alphabet,
            allowed,
            m,
            n,
            p,
            target,
        })
    }

    /// Full witness-family spaces: every role allowed for every letter.
    pub fn exhaustive(alphabet: Vec<String>, target: BoundQuery) -> Result<SearchSpace> {
        let all = vec![
            vec![
                TransformRole::Cycle,
                TransformRole::Transposition01,
                TransformRole::Contraction10,
                TransformRole::Identity,
            ];
            alphabet.len()
        ];
        SearchSpace::new(alphabet, [all.clone(), all.clone(), all], target)
    }

    /// Number of raw assignments before role-conflict filtering.
    pub fn assignment_count(&self) -> u128 {
        self.allowed
            .iter()
            .flatten()
            .map(|roles| roles.len() as u128)
            .product()
    }
}

/// One measured role assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchHit {
    /// Roles per component, per letter.
    pub roles: [Vec<TransformRole>; 3],
    pub measured: u64,
    pub reachable: u64,
    pub attains_target: bool,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    /// Hits ranked by measured size descending, then lexicographic roles.
    pub hits: Vec<SearchHit>,
    /// Assignments actually built and measured.
    pub evaluated: u64,
    /// Assignments skipped for violating the one-letter-per-role rule.
    pub skipped_invalid: u64,
    /// False when the budget ran out before the space was exhausted.
    pub complete: bool,
    pub target_value: Option<u128>,
}

/// Enumerates role assignments of the space in lexicographic order,
/// measures each valid one, and ranks the results. Stops after `budget`
/// measured assignments and flags the outcome incomplete.
pub fn search(space: &SearchSpace, budget: u64, max_states: usize) -> Result<SearchOutcome> {
    let tree = shape_tree(space.target.shape, &space.target.ops)?;
    let target_value = bound(&space.target).value();
    let sizes = [space.m, space.n, space.p];

    let slots: Vec<&Vec<TransformRole>> = space.allowed.iter().flatten().collect();
    let letters = space.alphabet.len();
    let mut cursor = vec![0usize; slots.len()];
    let mut hits = Vec::new();
    let mut evaluated = 0u64;
    let mut skipped_invalid = 0u64;
    let mut complete = true;

    'enumerate: loop {
        let roles: [Vec<TransformRole>; 3] = std::array::from_fn(|component| {
            (0..letters)
                .map(|letter| {
                    let slot = component * letters + letter;
                    slots[slot][cursor[slot]]
                })
                .collect()
        });

        let specs: Vec<BrzozowskiSpec> = (0..3)
            .map(|component| BrzozowskiSpec {
                n: sizes[component],
                alphabet: space.alphabet.clone(),
                roles: roles[component].clone(),
            })
            .collect();
        let built: Result<Vec<Dfa>> = specs.iter().map(brzozowski).collect();
        match built {
            Err(Error::BadRoles(_)) => skipped_invalid += 1,
            Err(other) => return Err(other),
            Ok(operands) => {
                if evaluated == budget {
                    complete = false;
                    break 'enumerate;
                }
                let refs: Vec<&Dfa> = operands.iter().collect();
                let product = build_tree_capped(&tree, &refs, max_states)?;
                let reachable = product.dfa.state_count() as u64;
                let measured = product.dfa.state_complexity() as u64;
                evaluated += 1;
                hits.push(SearchHit {
                    roles,
                    measured,
                    reachable,
                    attains_target: target_value == Some(measured as u128),
                });
            }
        }

        for slot in (0..slots.len()).rev() {
            cursor[slot] += 1;
            if cursor[slot] < slots[slot].len() {
                continue 'enumerate;
            }
            cursor[slot] = 0;
        }
        break;
    }

    hits.sort_by(|a, b| {
        b.measured
            .cmp(&a.measured)
            .then_with(|| a.roles.cmp(&b.roles))
    });
    Ok(SearchOutcome {
        hits,
        evaluated,
        skipped_invalid,
        complete,
        target_value,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl ReportFormat {
    pub fn parse(text: &str) -> Result<ReportFormat> {
        match text {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(Error::Parse(format!(
                "unknown format \"{other}\" (expected csv or json)"
            ))),
        }
    }
}

fn ops_field(ops: &[BoolOp]) -> String {
    ops.iter()
        .map(|op| op.to_string())
        .collect::<Vec<_>>()
        .join("+")
}

pub fn to_csv(rows: &[ExperimentRow]) -> String {
    let mut out = String::from("shape,ops,m,n,p,predicted,measured,reachable,match,wall_ms\n");
    let opt = |n: Option<u64>| n.map_or(String::new(), |v| v.to_string());
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            row.shape,
            ops_field(&row.ops),
            row.m,
            row.n,
            row.p,
            row.predicted.map_or(String::new(), |v| v.to_string()),
            opt(row.measured),
            opt(row.reachable),
            row.matched,
            row.wall_ms
        ));
    }
    out
}

pub fn to_json(rows: &[ExperimentRow]) -> String {
    let mut out = serde_json::to_string_pretty(rows).expect("rows serialize");
    out.push('\n');
    out
}

pub fn rows_from_json(text: &str) -> Result<Vec<ExperimentRow>> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad report JSON: {e}")))
}

pub fn report(rows: &[ExperimentRow], format: ReportFormat) -> String {
    match format {
        ReportFormat::Csv => to_csv(rows),
        ReportFormat::Json => to_json(rows),
    }
}

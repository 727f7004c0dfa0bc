//! Closed-form state-complexity counts for the supported operation shapes.
//!
//! Everything here is exact integer arithmetic in `u128`; exponents stay
//! well under 128 bits at desk scale. Where a shape has no closed form, or
//! only an upper bound, the [`Bound`] variant says so instead of guessing.

use std::fmt;

use crate::construct::BoolOp;
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::witness::Shape;

/// A request for the predicted state complexity of one combined operation.
///
/// For [`Shape::BoolBool`] `ops` holds the inner then the outer connective;
/// single-connective shapes take exactly one op and [`Shape::DoubleCat`]
/// takes none.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundQuery {
    pub shape: Shape,
    pub ops: Vec<BoolOp>,
    pub m: usize,
    pub n: usize,
    pub p: usize,
}

impl BoundQuery {
    pub fn new(shape: Shape, ops: Vec<BoolOp>, m: usize, n: usize, p: usize) -> Result<BoundQuery> {
        if m < 3 || n < 3 || p < 3 {
            return Err(Error::BadWitnessSize { m, n, p });
        }
        if ops.len() != shape.op_count() {
            return Err(Error::BadQuery(format!(
                "shape {shape} takes {} boolean op(s), got {}",
                shape.op_count(),
                ops.len()
            )));
        }
        if ops.iter().any(|op| matches!(op, BoolOp::Custom(_))) {
            return Err(Error::BadQuery(
                "closed forms cover or/and/xor only, not custom truth tables".into(),
            ));
        }
        Ok(BoundQuery { shape, ops, m, n, p })
    }
}

/// The outcome of a bound lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    /// A proved exact value.
    Exact { value: u128, formula: String },
    /// Only an upper bound is known for this combination.
    UpperOnly { value: u128, formula: String },
    /// No closed form is available.
    NoClosedForm,
}

impl Bound {
    pub fn value(&self) -> Option<u128> {
        match self {
            Bound::Exact { value, .. } | Bound::UpperOnly { value, .. } => Some(*value),
            Bound::NoClosedForm => None,
        }
    }

    pub fn formula(&self) -> Option<&str> {
        match self {
            Bound::Exact { formula, .. } | Bound::UpperOnly { formula, .. } => Some(formula),
            Bound::NoClosedForm => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Bound::Exact { .. })
    }

    pub fn is_upper_only(&self) -> bool {
        matches!(self, Bound::UpperOnly { .. })
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Exact { value, formula } => write!(f, "{value} = {formula}"),
            Bound::UpperOnly { value, formula } => {
                write!(f, "{value} = {formula} (upper bound only)")
            }
            Bound::NoClosedForm => f.write_str("no closed form"),
        }
    }
}

fn pow2(exp: usize) -> u128 {
    assert!(exp < 128, "2^{exp} exceeds u128");
    1u128 << exp
}

/// State complexity of catenation for an m-state language with one final
/// state followed by an n-state language: (m−1)·2ⁿ + 2ⁿ⁻¹.
pub fn sc_cat(m: usize, n: usize) -> u128 {
    assert!(m >= 1 && n >= 1);
    (m as u128 - 1) * pow2(n) + pow2(n - 1)
}

/// State complexity of catenation when the left language has k final
/// states out of m: m·2ⁿ − k·2ⁿ⁻¹.
pub fn sc_cat_kfinal(m: usize, k: usize, n: usize) -> Result<u128> {
    assert!(m >= 1 && n >= 1);
    if k > m {
        return Err(Error::BadFinalCount {
            k: k as u64,
            m: m as u64,
        });
    }
    Ok(m as u128 * pow2(n) - k as u128 * pow2(n - 1))
}

/// Saturated-tableau counts on an n×p grid: those not anchored at the
/// origin, (2ⁿ−1)(2ᵖ−1)+1, and those with cell (0,0) marked, 2ⁿ⁻¹·2ᵖ⁻¹.
pub fn union_tableau_count(n: usize, p: usize) -> (u128, u128) {
    assert!(n >= 1 && p >= 1);
    let without_origin = (pow2(n) - 1) * (pow2(p) - 1) + 1;
    let with_origin = pow2(n - 1) * pow2(p - 1);
    (without_origin, with_origin)
}

/// Number of state pairs accepted by `op` over the finality of two DFAs,
/// i.e. |{(q_a, q_b) : op(q_a ∈ F_A, q_b ∈ F_B)}|. This is the final-state
/// count k of a boolean product before catenation.
pub fn bool_final_count(op: BoolOp, a: &Dfa, b: &Dfa) -> u64 {
    let (ma, fa) = (a.state_count() as u64, a.finals().len() as u64);
    let (mb, fb) = (b.state_count() as u64, b.finals().len() as u64);
    let mut count = 0;
    for (in_a, in_b, pairs) in [
        (false, false, (ma - fa) * (mb - fb)),
        (false, true, (ma - fa) * fb),
        (true, false, fa * (mb - fb)),
        (true, true, fa * fb),
    ] {
        if op.apply(in_a, in_b) {
            count += pairs;
        }
    }
    count
}

/// Final-count parameter k of the (A∘B) operand in the (A∘B)·C
/// composition, for single-final-state operands of sizes m and n.
fn bool_then_cat_k(op: BoolOp, m: usize, n: usize) -> usize {
    match op {
        BoolOp::Intersection => 1,
        BoolOp::Union => m + n - 1,
        BoolOp::SymDiff => m + n - 2,
        BoolOp::Custom(_) => unreachable!("rejected by BoundQuery::new"),
    }
}

/// Looks up the predicted state complexity for a validated query.
pub fn bound(q: &BoundQuery) -> Bound {
    let (m, n, p) = (q.m, q.n, q.p);
    match q.shape {
        Shape::DoubleCat => Bound::NoClosedForm,
        Shape::BoolBool => Bound::Exact {
            value: (m * n * p) as u128,
            formula: "m*n*p".into(),
        },
        Shape::CatOfBool => match q.ops[0] {
            BoolOp::Intersection => Bound::Exact {
                value: sc_cat(m, n * p),
                formula: "(m-1)*2^(n*p) + 2^(n*p-1)".into(),
            },
            BoolOp::Union => {
                let (plain, origin) = union_tableau_count(n, p);
                Bound::Exact {
                    value: (m as u128 - 1) * plain + origin,
                    formula: "(m-1)*((2^n-1)*(2^p-1)+1) + 2^(n-1)*2^(p-1)".into(),
                }
            }
            BoolOp::SymDiff => Bound::UpperOnly {
                value: sc_cat(m, n * p),
                formula: "(m-1)*2^(n*p) + 2^(n*p-1)".into(),
            },
            BoolOp::Custom(_) => unreachable!("rejected by BoundQuery::new"),
        },
        Shape::BoolThenCat => {
            let k = bool_then_cat_k(q.ops[0], m, n);
            let value = sc_cat_kfinal(m * n, k, p).expect("k <= m*n for m,n >= 3");
            Bound::Exact {
                value,
                formula: format!("m*n*2^p - k*2^(p-1), k={k}"),
            }
        }
        Shape::CatThenBool => Bound::Exact {
            value: sc_cat(m, n) * p as u128,
            formula: "((m-1)*2^n + 2^(n-1))*p".into(),
        },
    }
}

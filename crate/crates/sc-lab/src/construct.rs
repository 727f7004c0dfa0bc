//! The catenation product, the boolean product, and expression trees
//! combining them.
//!
//! Both products materialize only the states reachable from the initial
//! state, discovered breadth-first with letters in index order. Every
//! constructed state keeps a structured label alongside the dense index:
//! a pair (p,q) for a boolean product, a pair (p,S) of a left state and a
//! set of right states for a catenation. Composing products nests labels,
//! which yields the five combined forms (i,S₁,S₂), (i,j,k), (i,T), (i,j,S₂)
//! and (i,S₁,k) for the three-operand shapes.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bitset::StateSet;
use crate::dfa::Dfa;
use crate::error::{Error, Result};

/// A binary boolean connective applied to the finality of the two operands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoolOp {
    Union,
    Intersection,
    SymDiff,
    /// Arbitrary truth table indexed by (inA, inB):
    /// `[f(0,0), f(0,1), f(1,0), f(1,1)]`.
    Custom([bool; 4]),
}

impl BoolOp {
    pub fn apply(&self, in_a: bool, in_b: bool) -> bool {
        match self {
            BoolOp::Union => in_a || in_b,
            BoolOp::Intersection => in_a && in_b,
            BoolOp::SymDiff => in_a != in_b,
            BoolOp::Custom(table) => table[(usize::from(in_a) << 1) | usize::from(in_b)],
        }
    }

    /// Accepts `or`, `and`, `xor`, or a 4-bit truth table like `0110`.
    pub fn parse(text: &str) -> Result<BoolOp> {
        match text {
            "or" => Ok(BoolOp::Union),
            "and" => Ok(BoolOp::Intersection),
            "xor" => Ok(BoolOp::SymDiff),
            other => {
                let bits: Vec<bool> = other
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        _ => Err(()),
                    })
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| {
                        Error::Parse(format!(
                            "unknown boolean op \"{other}\" (expected or, and, xor, or 4 bits)"
                        ))
                    })?;
                match <[bool; 4]>::try_from(bits) {
                    Ok(table) => Ok(BoolOp::Custom(table)),
                    Err(_) => Err(Error::Parse(format!(
                        "truth table \"{other}\" must have exactly 4 bits"
                    ))),
                }
            }
        }
    }
}

impl fmt::Display for BoolOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoolOp::Union => f.write_str("or"),
            BoolOp::Intersection => f.write_str("and"),
            BoolOp::SymDiff => f.write_str("xor"),
            BoolOp::Custom(t) => {
                for &bit in t {
                    f.write_str(if bit { "1" } else { "0" })?;
                }
                Ok(())
            }
        }
    }
}

impl Serialize for BoolOp {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BoolOp {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        BoolOp::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// An expression tree over language operands. Leaves name operand indices;
/// inner nodes are catenations or boolean connectives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpTree {
    Leaf(usize),
    Cat(Box<OpTree>, Box<OpTree>),
    Bool(BoolOp, Box<OpTree>, Box<OpTree>),
}

impl OpTree {
    pub fn cat(left: OpTree, right: OpTree) -> OpTree {
        OpTree::Cat(Box::new(left), Box::new(right))
    }

    pub fn bool_op(op: BoolOp, left: OpTree, right: OpTree) -> OpTree {
        OpTree::Bool(op, Box::new(left), Box::new(right))
    }

    /// Leaf indices in left-to-right order.
    pub fn leaves(&self) -> Vec<usize> {
        fn walk(t: &OpTree, out: &mut Vec<usize>) {
            match t {
                OpTree::Leaf(i) => out.push(*i),
                OpTree::Cat(l, r) | OpTree::Bool(_, l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves().len()
    }

    /// Checks that operand indices are distinct and cover `0..k` for a
    /// k-operand tree, with at most 3 operands.
    pub fn validate(&self) -> Result<()> {
        let mut leaves = self.leaves();
        let k = leaves.len();
        if k > 3 {
            return Err(Error::Parse(format!("tree has {k} operands, at most 3 supported")));
        }
        leaves.sort_unstable();
        for (want, &got) in leaves.iter().enumerate() {
            if want != got {
                return Err(Error::Parse(format!(
                    "operand indices must be distinct and cover 0..{k}, got {:?}",
                    self.leaves()
                )));
            }
        }
        Ok(())
    }

    /// Parses the textual syntax, e.g. `cat(cat(0,1),2)` or `cat(0,or(1,2))`,
    /// and validates operand coverage.
    pub fn parse(text: &str) -> Result<OpTree> {
        let bytes = text.as_bytes();
        let mut pos = 0usize;
        let tree = parse_tree(bytes, &mut pos)?;
        skip_ws(bytes, &mut pos);
        if pos != bytes.len() {
            return Err(Error::Parse(format!(
                "trailing input at byte {pos} of \"{text}\""
            )));
        }
        tree.validate()?;
        Ok(tree)
    }
}

impl fmt::Display for OpTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpTree::Leaf(i) => write!(f, "{i}"),
            OpTree::Cat(l, r) => write!(f, "cat({l},{r})"),
            OpTree::Bool(op, l, r) => write!(f, "{op}({l},{r})"),
        }
    }
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

fn expect(bytes: &[u8], pos: &mut usize, ch: u8) -> Result<()> {
    skip_ws(bytes, pos);
    if *pos < bytes.len() && bytes[*pos] == ch {
        *pos += 1;
        Ok(())
    } else {
        Err(Error::Parse(format!(
            "expected '{}' at byte {pos}",
            ch as char
        )))
    }
}

fn parse_tree(bytes: &[u8], pos: &mut usize) -> Result<OpTree> {
    skip_ws(bytes, pos);
    let start = *pos;
    while *pos < bytes.len() && bytes[*pos].is_ascii_alphanumeric() {
        *pos += 1;
    }
    let name = std::str::from_utf8(&bytes[start..*pos]).unwrap();
    if name.is_empty() {
        return Err(Error::Parse(format!(
            "expected operand index or node name at byte {start}"
        )));
    }
    let mut peek = *pos;
    skip_ws(bytes, &mut peek);
    if peek < bytes.len() && bytes[peek] == b'(' {
        expect(bytes, pos, b'(')?;
        let left = parse_tree(bytes, pos)?;
        expect(bytes, pos, b',')?;
        let right = parse_tree(bytes, pos)?;
        expect(bytes, pos, b')')?;
        if name == "cat" {
            Ok(OpTree::cat(left, right))
        } else {
            Ok(OpTree::bool_op(BoolOp::parse(name)?, left, right))
        }
    } else {
        let index: usize = name
            .parse()
            .map_err(|_| Error::Parse(format!("bad operand index \"{name}\"")))?;
        Ok(OpTree::Leaf(index))
    }
}

/// Structured label of a constructed state.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    /// A state of an operand DFA.
    Leaf(usize),
    /// A boolean-product state (left, right).
    Pair(Arc<Label>, Arc<Label>),
    /// A catenation-product state: the left-operand label and the set of
    /// live right-operand labels, in dense right-state order.
    Cat(Arc<Label>, Vec<Arc<Label>>),
}

impl Label {
    pub fn as_leaf(&self) -> Option<usize> {
        match self {
            Label::Leaf(i) => Some(*i),
            _ => None,
        }
    }

    /// The (i,S₁,S₂) view of a ((0·1)·2) state.
    pub fn as_cat_cat(&self) -> Option<(usize, Vec<usize>, Vec<usize>)> {
        let Label::Cat(left, s2) = self else {
            return None;
        };
        let Label::Cat(leaf, s1) = left.as_ref() else {
            return None;
        };
        let i = leaf.as_leaf()?;
        let s1: Option<Vec<usize>> = s1.iter().map(|l| l.as_leaf()).collect();
        let s2: Option<Vec<usize>> = s2.iter().map(|l| l.as_leaf()).collect();
        Some((i, s1?, s2?))
    }

    /// The (i,j,k) view of a ((0∘1)∘2) state.
    pub fn as_bool_bool(&self) -> Option<(usize, usize, usize)> {
        let Label::Pair(left, k) = self else {
            return None;
        };
        let Label::Pair(i, j) = left.as_ref() else {
            return None;
        };
        Some((i.as_leaf()?, j.as_leaf()?, k.as_leaf()?))
    }

    /// The (i,T) view of a (0·(1∘2)) state, T as sorted pairs.
    pub fn as_pair_set(&self) -> Option<(usize, Vec<(usize, usize)>)> {
        let Label::Cat(left, members) = self else {
            return None;
        };
        let i = left.as_leaf()?;
        let mut pairs = Vec::with_capacity(members.len());
        for member in members {
            let Label::Pair(j, k) = member.as_ref() else {
                return None;
            };
            pairs.push((j.as_leaf()?, k.as_leaf()?));
        }
        pairs.sort_unstable();
        Some((i, pairs))
    }

    /// The (i,j,S₂) view of a ((0∘1)·2) state.
    pub fn as_bool_cat(&self) -> Option<(usize, usize, Vec<usize>)> {
        let Label::Cat(left, members) = self else {
            return None;
        };
        let Label::Pair(i, j) = left.as_ref() else {
            return None;
        };
        let s: Option<Vec<usize>> = members.iter().map(|l| l.as_leaf()).collect();
        Some((i.as_leaf()?, j.as_leaf()?, s?))
    }

    /// The (i,S₁,k) view of a ((0·1)∘2) state.
    pub fn as_cat_bool(&self) -> Option<(usize, Vec<usize>, usize)> {
        let Label::Pair(left, k) = self else {
            return None;
        };
        let Label::Cat(i, members) = left.as_ref() else {
            return None;
        };
        let s: Option<Vec<usize>> = members.iter().map(|l| l.as_leaf()).collect();
        Some((i.as_leaf()?, s?, k.as_leaf()?))
    }

    /// Compact text form, e.g. `(1,{0,2})` or `(0,{(0,0),(1,2)})`.
    pub fn render(&self) -> String {
        match self {
            Label::Leaf(i) => i.to_string(),
            Label::Pair(l, r) => format!("({},{})", l.render(), r.render()),
            Label::Cat(l, members) => {
                let inner: Vec<String> = members.iter().map(|m| m.render()).collect();
                format!("({},{{{}}})", l.render(), inner.join(","))
            }
        }
    }
}

/// A constructed DFA whose dense states carry structured labels.
#[derive(Clone, Debug)]
pub struct LabeledDfa {
    pub dfa: Dfa,
    labels: Vec<Arc<Label>>,
}

impl LabeledDfa {
    /// Wraps an operand DFA with leaf labels.
    pub fn from_operand(d: &Dfa) -> LabeledDfa {
        LabeledDfa {
            dfa: d.clone(),
            labels: (0..d.state_count()).map(|q| Arc::new(Label::Leaf(q))).collect(),
        }
    }

    /// The labels of all materialized (reachable) states, indexed by state.
    pub fn reachable_labels(&self) -> &[Arc<Label>] {
        &self.labels
    }

    pub fn label(&self, q: usize) -> &Label {
        &self.labels[q]
    }

    pub fn find_label(&self, wanted: &Label) -> Option<usize> {
        self.labels.iter().position(|l| l.as_ref() == wanted)
    }
}

fn check_alphabets(a: &Dfa, b: &Dfa) -> Result<()> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch {
            left: a.alphabet().join(","),
            right: b.alphabet().join(","),
        });
    }
    Ok(())
}

/// The catenation construction: states (p,S) with p a left state and S the
/// set of live right states, S re-seeded with the right initial state
/// whenever p is final. L(result) = L(a)·L(b).
pub fn cat_product(a: &Dfa, b: &Dfa) -> Result<LabeledDfa> {
    cat_labeled(
        &LabeledDfa::from_operand(a),
        &LabeledDfa::from_operand(b),
        usize::MAX,
    )
}

/// The pair construction with finality `op(p ∈ F_A, q ∈ F_B)`.
/// L(result) = L(a) ∘ L(b).
pub fn bool_product(op: BoolOp, a: &Dfa, b: &Dfa) -> Result<LabeledDfa> {
    bool_labeled(
        op,
        &LabeledDfa::from_operand(a),
        &LabeledDfa::from_operand(b),
        usize::MAX,
    )
}

/// Composes products along an expression tree.
pub fn build_tree(tree: &OpTree, operands: &[&Dfa]) -> Result<LabeledDfa> {
    build_tree_capped(tree, operands, usize::MAX)
}

/// Like [`build_tree`] but refuses to materialize more than `max_states`
/// states in any intermediate or final product.
pub fn build_tree_capped(
    tree: &OpTree,
    operands: &[&Dfa],
    max_states: usize,
) -> Result<LabeledDfa> {
    tree.validate()?;
    if tree.leaf_count() != operands.len() {
        return Err(Error::Parse(format!(
            "tree names {} operands but {} were supplied",
            tree.leaf_count(),
            operands.len()
        )));
    }
    build_node(tree, operands, max_states)
}

fn build_node(tree: &OpTree, operands: &[&Dfa], cap: usize) -> Result<LabeledDfa> {
    match tree {
        OpTree::Leaf(i) => Ok(LabeledDfa::from_operand(operands[*i])),
        OpTree::Cat(l, r) => {
            let left = build_node(l, operands, cap)?;
            let right = build_node(r, operands, cap)?;
            cat_labeled(&left, &right, cap)
        }
        OpTree::Bool(op, l, r) => {
            let left = build_node(l, operands, cap)?;
            let right = build_node(r, operands, cap)?;
            bool_labeled(*op, &left, &right, cap)
        }
    }
}

fn cat_labeled(a: &LabeledDfa, b: &LabeledDfa, cap: usize) -> Result<LabeledDfa> {
    check_alphabets(&a.dfa, &b.dfa)?;
    let k = a.dfa.alphabet_size();
    let nb = b.dfa.state_count();
    let b_finals = StateSet::from_indices(nb, b.dfa.finals());

    let mut index: HashMap<(usize, StateSet), usize> = HashMap::new();
    let mut keys: Vec<(usize, StateSet)> = Vec::new();
    let mut delta: Vec<usize> = Vec::new();

    let intern = |key: (usize, StateSet),
                      index: &mut HashMap<(usize, StateSet), usize>,
                      keys: &mut Vec<(usize, StateSet)>|
     -> Result<usize> {
        if let Some(&t) = index.get(&key) {
            return Ok(t);
        }
        if keys.len() >= cap {
            return Err(Error::StateCap { cap });
        }
        let t = keys.len();
        index.insert(key.clone(), t);
        keys.push(key);
        Ok(t)
    };

    let start = a.dfa.initial();
    let init_set = if a.dfa.is_final(start) {
        StateSet::singleton(nb, b.dfa.initial())
    } else {
        StateSet::empty(nb)
    };
    intern((start, init_set), &mut index, &mut keys)?;

    let mut at = 0;
    while at < keys.len() {
        let (p, s) = keys[at].clone();
        for x in 0..k {
            let p2 = a.dfa.next(p, x);
            let mut s2 = StateSet::empty(nb);
            for q in s.iter() {
                s2.insert(b.dfa.next(q, x));
            }
            if a.dfa.is_final(p2) {
                s2.insert(b.dfa.initial());
            }
            let target = intern((p2, s2), &mut index, &mut keys)?;
            delta.push(target);
        }
        at += 1;
    }

    let finals: Vec<bool> = keys.iter().map(|(_, s)| s.intersects(&b_finals)).collect();
    let labels: Vec<Arc<Label>> = keys
        .iter()
        .map(|(p, s)| {
            Arc::new(Label::Cat(
                a.labels[*p].clone(),
                s.iter().map(|q| b.labels[q].clone()).collect(),
            ))
        })
        .collect();
    let dfa = Dfa::from_parts(a.dfa.alphabet().to_vec(), keys.len(), 0, finals, delta);
    Ok(LabeledDfa { dfa, labels })
}

fn bool_labeled(op: BoolOp, a: &LabeledDfa, b: &LabeledDfa, cap: usize) -> Result<LabeledDfa> {
    check_alphabets(&a.dfa, &b.dfa)?;
    let k = a.dfa.alphabet_size();

    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut keys: Vec<(usize, usize)> = Vec::new();
    let mut delta: Vec<usize> = Vec::new();

    let intern = |key: (usize, usize),
                      index: &mut HashMap<(usize, usize), usize>,
                      keys: &mut Vec<(usize, usize)>|
     -> Result<usize> {
        if let Some(&t) = index.get(&key) {
            return Ok(t);
        }
        if keys.len() >= cap {
            return Err(Error::StateCap { cap });
        }
        let t = keys.len();
        index.insert(key, t);
        keys.push(key);
        Ok(t)
    };

    intern((a.dfa.initial(), b.dfa.initial()), &mut index, &mut keys)?;
    let mut at = 0;
    while at < keys.len() {
        let (p, q) = keys[at];
        for x in 0..k {
            let target = intern((a.dfa.next(p, x), b.dfa.next(q, x)), &mut index, &mut keys)?;
            delta.push(target);
        }
        at += 1;
    }

    let finals: Vec<bool> = keys
        .iter()
        .map(|&(p, q)| op.apply(a.dfa.is_final(p), b.dfa.is_final(q)))
        .collect();
    let labels: Vec<Arc<Label>> = keys
        .iter()
        .map(|&(p, q)| Arc::new(Label::Pair(a.labels[p].clone(), b.labels[q].clone())))
        .collect();
    let dfa = Dfa::from_parts(a.dfa.alphabet().to_vec(), keys.len(), 0, finals, delta);
    Ok(LabeledDfa { dfa, labels })
}

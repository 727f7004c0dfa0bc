//! Brzozowski automata X_n(σ1,σ2,σ3;rest) and the five named witness
//! families.
//!
//! A Brzozowski automaton has states 0..n−1, initial state 0 and final state
//! n−1; each letter acts as the n-cycle (0,…,n−1), the transposition (0,1),
//! the contraction 1→0, or the identity. The five families assign fixed
//! roles per letter to the three operands of each combination shape, over a
//! shared alphabet so products align ({a,b} for `BoolBool` and `CatThenBool`,
//! {a,b,c} otherwise).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dfa::{mod_index, Dfa};
use crate::error::{Error, Result};

/// The action a letter performs on the state set of a Brzozowski automaton.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TransformRole {
    /// q ↦ q+1 mod n.
    Cycle,
    /// Swaps states 0 and 1.
    Transposition01,
    /// Sends state 1 to 0, fixes the rest.
    Contraction10,
    Identity,
}

impl TransformRole {
    pub fn parse(text: &str) -> Result<TransformRole> {
        match text {
            "cycle" => Ok(TransformRole::Cycle),
            "transposition" => Ok(TransformRole::Transposition01),
            "contraction" => Ok(TransformRole::Contraction10),
            "identity" => Ok(TransformRole::Identity),
            other => Err(Error::Parse(format!(
                "unknown role \"{other}\" (expected cycle, transposition, contraction or identity)"
            ))),
        }
    }
}

impl fmt::Display for TransformRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TransformRole::Cycle => "cycle",
            TransformRole::Transposition01 => "transposition",
            TransformRole::Contraction10 => "contraction",
            TransformRole::Identity => "identity",
        };
        f.write_str(s)
    }
}

/// Symbolic description of one Brzozowski automaton: a size and a role for
/// each letter of the shared alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrzozowskiSpec {
    pub n: usize,
    pub alphabet: Vec<String>,
    /// One role per letter, parallel to `alphabet`.
    pub roles: Vec<TransformRole>,
}

impl fmt::Display for BrzozowskiSpec {
    /// Renders in the X_n(σ1,σ2,σ3;rest) convention, e.g. `X_5(a,-,c;{b,d})`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let slot = |role: TransformRole| -> String {
            self.roles
                .iter()
                .position(|&r| r == role)
                .map_or("-".to_string(), |i| self.alphabet[i].clone())
        };
        let rest: Vec<&str> = self
            .roles
            .iter()
            .zip(&self.alphabet)
            .filter(|(&r, _)| r == TransformRole::Identity)
            .map(|(_, name)| name.as_str())
            .collect();
        write!(
            f,
            "X_{}({},{},{};{{{}}})",
            self.n,
            slot(TransformRole::Cycle),
            slot(TransformRole::Transposition01),
            slot(TransformRole::Contraction10),
            rest.join(",")
        )
    }
}

/// Builds the complete DFA of a Brzozowski specification: initial 0, finals
/// {n−1}, each letter acting per its role.
pub fn brzozowski(spec: &BrzozowskiSpec) -> Result<Dfa> {
    let n = spec.n;
    if n == 0 {
        return Err(Error::BadRoles("state count must be at least 1".into()));
    }
    if spec.roles.len() != spec.alphabet.len() {
        return Err(Error::BadRoles(format!(
            "{} roles for {} letters",
            spec.roles.len(),
            spec.alphabet.len()
        )));
    }
    for special in [
        TransformRole::Cycle,
        TransformRole::Transposition01,
        TransformRole::Contraction10,
    ] {
        if spec.roles.iter().filter(|&&r| r == special).count() > 1 {
            return Err(Error::BadRoles(format!(
                "role {special} assigned to more than one letter"
            )));
        }
    }
    if n < 2
        && spec
            .roles
            .iter()
            .any(|&r| r == TransformRole::Transposition01 || r == TransformRole::Contraction10)
    {
        return Err(Error::BadRoles(format!(
            "transposition and contraction need at least 2 states, got {n}"
        )));
    }
    let rows = (0..n)
        .map(|q| {
            spec.roles
                .iter()
                .map(|role| match role {
                    TransformRole::Cycle => mod_index(q as i64 + 1, n),
                    TransformRole::Transposition01 => match q {
                        0 => 1,
                        1 => 0,
                        _ => q,
                    },
                    TransformRole::Contraction10 => {
                        if q == 1 {
                            0
                        } else {
                            q
                        }
                    }
                    TransformRole::Identity => q,
                })
                .collect()
        })
        .collect();
    Dfa::new(spec.alphabet.clone(), 0, vec![n - 1], rows)
}

/// The five combination shapes the witness families target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    /// (A·B)·C
    DoubleCat,
    /// (A∘B)∘C
    BoolBool,
    /// A·(B∘C)
    CatOfBool,
    /// (A∘B)·C
    BoolThenCat,
    /// (A·B)∘C
    CatThenBool,
}

impl Shape {
    pub const ALL: [Shape; 5] = [
        Shape::DoubleCat,
        Shape::BoolBool,
        Shape::CatOfBool,
        Shape::BoolThenCat,
        Shape::CatThenBool,
    ];

    pub fn parse(text: &str) -> Result<Shape> {
        match text {
            "double-cat" => Ok(Shape::DoubleCat),
            "bool-bool" => Ok(Shape::BoolBool),
            "cat-of-bool" => Ok(Shape::CatOfBool),
            "bool-then-cat" => Ok(Shape::BoolThenCat),
            "cat-then-bool" => Ok(Shape::CatThenBool),
            other => Err(Error::Parse(format!(
                "unknown shape \"{other}\" (expected double-cat, bool-bool, cat-of-bool, \
                 bool-then-cat or cat-then-bool)"
            ))),
        }
    }

    /// Number of boolean connectives the shape's expression tree carries.
    pub fn op_count(&self) -> usize {
        match self {
            Shape::DoubleCat => 0,
            Shape::BoolBool => 2,
            Shape::CatOfBool | Shape::BoolThenCat | Shape::CatThenBool => 1,
        }
    }

    /// The shared witness alphabet of the shape.
    pub fn alphabet(&self) -> &'static [&'static str] {
        match self {
            Shape::BoolBool | Shape::CatThenBool => &["a", "b"],
            _ => &["a", "b", "c"],
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Shape::DoubleCat => "double-cat",
            Shape::BoolBool => "bool-bool",
            Shape::CatOfBool => "cat-of-bool",
            Shape::BoolThenCat => "bool-then-cat",
            Shape::CatThenBool => "cat-then-bool",
        };
        f.write_str(s)
    }
}

/// A witness family instance: the shape, the operand sizes, and the three
/// induced Brzozowski specifications.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessFamily {
    pub shape: Shape,
    pub m: usize,
    pub n: usize,
    pub p: usize,
    pub specs: [BrzozowskiSpec; 3],
}

impl WitnessFamily {
    /// Builds the three component DFAs.
    pub fn build(&self) -> Result<[Dfa; 3]> {
        Ok([
            brzozowski(&self.specs[0])?,
            brzozowski(&self.specs[1])?,
            brzozowski(&self.specs[2])?,
        ])
    }
}

/// Per-component roles in alphabet order, using one-letter codes:
/// 'C' cycle, 'T' transposition, 'K' contraction, '.' identity.
fn family_roles(shape: Shape) -> [&'static str; 3] {
    match shape {
        // (X_m(b,c,-;{a}), X_n(a,b,c;{}), X_p(a,-,b;{c}))
        Shape::DoubleCat => [".CT", "CTK", "CK."],
        // (X_m(a,-,-;{b}), X_n(a,b,-;{}), X_p(b,-,-;{a}))
        Shape::BoolBool => ["C.", "CT", ".C"],
        // (X_m(a,b,-;{c}), X_n(b,a,c;{}), X_p(b,-,c;{a}))
        Shape::CatOfBool => ["CT.", "TCK", ".CK"],
        // (X_m(a,b,-;{c}), X_n(a,c,-;{b}), X_p(a,-,b;{c}))
        Shape::BoolThenCat => ["CT.", "C.T", "CK."],
        // (X_m(a,b,-;{}), X_n(a,-,b;{}), X_p(b,a,-;{}))
        Shape::CatThenBool => ["CT", "CK", "TC"],
    }
}

/// The fixed witness family of a shape at sizes (m,n,p), all at least 3.
pub fn family(shape: Shape, m: usize, n: usize, p: usize) -> Result<WitnessFamily> {
    if m < 3 || n < 3 || p < 3 {
        return Err(Error::BadWitnessSize { m, n, p });
    }
    let alphabet: Vec<String> = shape.alphabet().iter().map(|s| s.to_string()).collect();
    let codes = family_roles(shape);
    let spec_for = |size: usize, code: &str| BrzozowskiSpec {
        n: size,
        alphabet: alphabet.clone(),
        roles: code
            .chars()
            .map(|c| match c {
                'C' => TransformRole::Cycle,
                'T' => TransformRole::Transposition01,
                'K' => TransformRole::Contraction10,
                _ => TransformRole::Identity,
            })
            .collect(),
    };
    Ok(WitnessFamily {
        shape,
        m,
        n,
        p,
        specs: [
            spec_for(m, codes[0]),
            spec_for(n, codes[1]),
            spec_for(p, codes[2]),
        ],
    })
}

/// The three witness DFAs of a shape at sizes (m,n,p).
pub fn witness(shape: Shape, m: usize, n: usize, p: usize) -> Result<[Dfa; 3]> {
    family(shape, m, n, p)?.build()
}

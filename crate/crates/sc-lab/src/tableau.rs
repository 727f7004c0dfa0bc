//! Tableaux: boolean n×p grids encoding the right-hand set T of a state
//! (i,T) in a catenation-of-boolean construction, with the saturation
//! closures that force state equivalences.
//!
//! Under union, a tableau is equivalent to the full product of its marked
//! rows and marked columns. Under symmetric difference, equivalence forces
//! only the completion of right triangles into rectangles; the fixpoint is
//! a disjoint union of complete rectangles.

use std::collections::BTreeSet;

use crate::bitset::StateSet;
use crate::bounds;
use crate::construct::{build_tree, BoolOp, OpTree};
use crate::dfa::Dfa;
use crate::error::Result;
use crate::witness::{witness, Shape};

/// A grid of marked cells (j,k) with j < rows, k < cols.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tableau {
    rows: usize,
    cols: usize,
    cells: StateSet,
}

impl Tableau {
    pub fn new(rows: usize, cols: usize) -> Tableau {
        assert!(rows >= 1 && cols >= 1);
        Tableau {
            rows,
            cols,
            cells: StateSet::empty(rows * cols),
        }
    }

    pub fn from_cells(rows: usize, cols: usize, cells: &[(usize, usize)]) -> Tableau {
        let mut t = Tableau::new(rows, cols);
        for &(j, k) in cells {
            t.mark(j, k);
        }
        t
    }

    pub fn full(rows: usize, cols: usize) -> Tableau {
        let mut t = Tableau::new(rows, cols);
        for j in 0..rows {
            for k in 0..cols {
                t.mark(j, k);
            }
        }
        t
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mark(&mut self, j: usize, k: usize) {
        assert!(j < self.rows && k < self.cols, "cell ({j},{k}) out of range");
        self.cells.insert(j * self.cols + k);
    }

    pub fn marked(&self, j: usize, k: usize) -> bool {
        assert!(j < self.rows && k < self.cols, "cell ({j},{k}) out of range");
        self.cells.contains(j * self.cols + k)
    }

    /// Marked cells in row-major order.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        self.cells
            .iter()
            .map(|bit| (bit / self.cols, bit % self.cols))
            .collect()
    }

    pub fn marked_count(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn is_subset(&self, other: &Tableau) -> bool {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.cells.is_subset(&other.cells)
    }

    /// ASCII grid, one line per row, `#` marked and `.` unmarked.
    pub fn render(&self) -> String {
        let mut out = String::with_capacity(self.rows * (self.cols + 1));
        for j in 0..self.rows {
            for k in 0..self.cols {
                out.push(if self.marked(j, k) { '#' } else { '.' });
            }
            if j + 1 < self.rows {
                out.push('\n');
            }
        }
        out
    }

    fn row_mask(&self, j: usize) -> u128 {
        assert!(self.cols <= 128);
        let mut mask = 0u128;
        for k in 0..self.cols {
            if self.marked(j, k) {
                mask |= 1 << k;
            }
        }
        mask
    }
}

/// The union closure: the product of the marked-row set and the
/// marked-column set.
pub fn saturate_union(t: &Tableau) -> Tableau {
    let mut rows = Vec::new();
    let mut cols = Vec::new();
    for j in 0..t.rows() {
        if (0..t.cols()).any(|k| t.marked(j, k)) {
            rows.push(j);
        }
    }
    for k in 0..t.cols() {
        if (0..t.rows()).any(|j| t.marked(j, k)) {
            cols.push(k);
        }
    }
    let mut out = Tableau::new(t.rows(), t.cols());
    for &j in &rows {
        for &k in &cols {
            out.mark(j, k);
        }
    }
    out
}

/// The xor closure: the least fixpoint of completing every right triangle
/// into a rectangle. Two rows sharing a marked column end up with the same
/// column set, so the fixpoint merges row masks until stable.
pub fn saturate_xor(t: &Tableau) -> Tableau {
    let mut masks: Vec<u128> = (0..t.rows()).map(|j| t.row_mask(j)).collect();
    loop {
        let mut changed = false;
        for j1 in 0..masks.len() {
            for j2 in j1 + 1..masks.len() {
                if masks[j1] & masks[j2] != 0 && masks[j1] != masks[j2] {
                    let merged = masks[j1] | masks[j2];
                    masks[j1] = merged;
                    masks[j2] = merged;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut out = Tableau::new(t.rows(), t.cols());
    for (j, mask) in masks.iter().enumerate() {
        for k in 0..t.cols() {
            if mask & (1 << k) != 0 {
                out.mark(j, k);
            }
        }
    }
    out
}

/// Four marked cells at {j1,j2} × {k1,k2}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rectangle {
    pub rows: (usize, usize),
    pub cols: (usize, usize),
}

/// Three marked cells whose fourth rectangle corner is unmarked: `corner`
/// shares a row with `row_mate` and a column with `col_mate`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RightTriangle {
    pub corner: (usize, usize),
    pub row_mate: (usize, usize),
    pub col_mate: (usize, usize),
    pub missing: (usize, usize),
}

pub fn find_rectangles(t: &Tableau) -> Vec<Rectangle> {
    let mut out = Vec::new();
    for j1 in 0..t.rows() {
        for j2 in j1 + 1..t.rows() {
            let both = t.row_mask(j1) & t.row_mask(j2);
            let cols: Vec<usize> = (0..t.cols()).filter(|&k| both & (1 << k) != 0).collect();
            for (a, &k1) in cols.iter().enumerate() {
                for &k2 in &cols[a + 1..] {
                    out.push(Rectangle {
                        rows: (j1, j2),
                        cols: (k1, k2),
                    });
                }
            }
        }
    }
    out
}

/// Pairs every marked cell with its marked row mates and marked column
/// mates; each combination whose fourth corner is unmarked is a triangle.
pub fn find_right_triangles(t: &Tableau) -> Vec<RightTriangle> {
    let cells = t.cells();
    let mut out = Vec::new();
    for &(j1, k1) in &cells {
        for &(rj, k2) in &cells {
            if rj != j1 || k2 == k1 {
                continue;
            }
            for &(j2, ck) in &cells {
                if ck != k1 || j2 == j1 {
                    continue;
                }
                if !t.marked(j2, k2) {
                    out.push(RightTriangle {
                        corner: (j1, k1),
                        row_mate: (j1, k2),
                        col_mate: (j2, k1),
                        missing: (j2, k2),
                    });
                }
            }
        }
    }
    out
}

/// Counts of distinct union-saturated tableaux on an n×p grid: all of
/// them, and those with the origin cell (0,0) marked.
pub fn count_union_classes(n: usize, p: usize) -> (u128, u128) {
    bounds::union_tableau_count(n, p)
}

/// The six-cell 3×4 tableau that the xor construction cannot tell apart
/// from the full grid.
pub const SIX_CELLS: [(usize, usize); 6] = [(0, 0), (0, 2), (1, 1), (1, 3), (2, 0), (2, 2)];

/// Outcome of the symmetric-difference counterexample run at (3,3,4).
#[derive(Clone, Debug)]
pub struct XorReport {
    pub reachable: u64,
    pub measured: u64,
    pub upper_bound: u128,
    /// Dense state labeled (i, full 3×4 tableau).
    pub full_state: usize,
    /// Dense state labeled (i, six-cell tableau), same i.
    pub six_state: usize,
    pub full_label: String,
    pub six_label: String,
    pub shared_class: usize,
    pub full_tableau: Tableau,
    pub six_tableau: Tableau,
}

/// Builds A·(B⊕C) on the three-letter family at (3,3,4), minimizes, and
/// exhibits the two distinct reachable final states that collapse into one
/// class, witnessing that the measured size stays below the upper bound.
pub fn xor_counterexample() -> Result<XorReport> {
    let w = witness(Shape::CatOfBool, 3, 3, 4)?;
    let tree = OpTree::cat(
        OpTree::Leaf(0),
        OpTree::bool_op(BoolOp::SymDiff, OpTree::Leaf(1), OpTree::Leaf(2)),
    );
    let operands: Vec<&Dfa> = w.iter().collect();
    let built = build_tree(&tree, &operands)?;
    let reachable = built.dfa.state_count() as u64;
    let (minimized, classes) = built.dfa.minimize_with_classes();
    let measured = minimized.state_count() as u64;
    let upper_bound = bounds::sc_cat(3, 12);

    let full_cells: BTreeSet<(usize, usize)> =
        (0..3).flat_map(|j| (0..4).map(move |k| (j, k))).collect();
    let six_cells: BTreeSet<(usize, usize)> = SIX_CELLS.iter().copied().collect();

    let mut full_states: Vec<(usize, usize)> = Vec::new();
    let mut six_states: Vec<(usize, usize)> = Vec::new();
    for q in 0..built.dfa.state_count() {
        if let Some((i, pairs)) = built.label(q).as_pair_set() {
            let set: BTreeSet<(usize, usize)> = pairs.into_iter().collect();
            if set == full_cells {
                full_states.push((i, q));
            } else if set == six_cells {
                six_states.push((i, q));
            }
        }
    }

    let mut pair = None;
    'search: for &(i, qf) in &full_states {
        for &(j, qs) in &six_states {
            if i == j && classes[qf] == classes[qs] {
                pair = Some((qf, qs));
                break 'search;
            }
        }
    }
    let (full_state, six_state) =
        pair.expect("full and six-cell tableaux must collapse for some left state");
    assert!(built.dfa.is_final(full_state) && built.dfa.is_final(six_state));
    assert!((measured as u128) < upper_bound);

    Ok(XorReport {
        reachable,
        measured,
        upper_bound,
        full_state,
        six_state,
        full_label: built.label(full_state).render(),
        six_label: built.label(six_state).render(),
        shared_class: classes[full_state].expect("reachable state"),
        full_tableau: Tableau::full(3, 4),
        six_tableau: Tableau::from_cells(3, 4, &SIX_CELLS),
    })
}

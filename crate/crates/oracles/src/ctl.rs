//! CTL by brute force: every quantifier is decided by listing the maximal
//! paths from a node, completed by repeating their leaf forever.
//!
//! Formulas here keep every derived operator as a primitive with its own
//! path semantics, so comparing against the checker also tests its
//! desugaring.

use std::collections::HashMap;
use std::ops::Range;

use rand::Rng;

use stabmc_core::logic::{Atomic, Ctl, TreeShape};

/// Arena tree: node 0 is the root, siblings are contiguous and children have
/// larger ids than their parent.
#[derive(Clone, Debug)]
pub struct RandomTree {
    pub children: Vec<Range<usize>>,
    /// `labels[node][atom]`
    pub labels: Vec<Vec<bool>>,
}

impl TreeShape for RandomTree {
    fn node_count(&self) -> usize {
        self.children.len()
    }

    fn children(&self, node: usize) -> Range<usize> {
        self.children[node].clone()
    }
}

/// Breadth-first random tree with at most `max_nodes` nodes and `atoms`
/// random labels per node. `branching` is the largest child count.
pub fn random_tree(rng: &mut impl Rng, max_nodes: usize, branching: usize, atoms: usize) -> RandomTree {
    let mut children = vec![Range::default()];
    let mut next = 0;
    // each node gets children with probability p_inner, keeping some trees deep
    let p_inner: f64 = rng.gen_range(0.3..0.95);
    while next < children.len() {
        let room = max_nodes - children.len();
        let k = if room > 0 && rng.gen_bool(p_inner) {
            rng.gen_range(1..=branching).min(room)
        } else {
            0
        };
        let first = children.len();
        children[next] = first..first + k;
        children.extend(std::iter::repeat_n(0..0, k));
        next += 1;
    }
    let density: f64 = rng.gen_range(0.1..0.9);
    let labels = (0..children.len())
        .map(|_| (0..atoms).map(|_| rng.gen_bool(density)).collect())
        .collect();
    RandomTree { children, labels }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Formula {
    Atom(usize),
    True,
    False,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    EX(Box<Formula>),
    AX(Box<Formula>),
    EF(Box<Formula>),
    AF(Box<Formula>),
    EG(Box<Formula>),
    AG(Box<Formula>),
    EU(Box<Formula>, Box<Formula>),
    AU(Box<Formula>, Box<Formula>),
}

pub fn random_formula(rng: &mut impl Rng, depth: u32, atoms: usize) -> Formula {
    use Formula::*;
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..10) {
            0 => True,
            1 => False,
            _ => Atom(rng.gen_range(0..atoms)),
        };
    }
    let choice = rng.gen_range(0..14);
    let mut sub = || Box::new(random_formula(rng, depth - 1, atoms));
    let a = sub();
    match choice {
        0 => Not(a),
        1 => And(a, sub()),
        2 => Or(a, sub()),
        3 => Imp(a, sub()),
        4 => EX(a),
        5 => AX(a),
        6 => EF(a),
        7 => AF(a),
        8 => EG(a),
        9 => AG(a),
        10 | 11 => EU(a, sub()),
        _ => AU(a, sub()),
    }
}

/// State formula for the checker side: a label index or falsity.
#[derive(Clone, Debug, PartialEq)]
pub enum Label {
    Bottom,
    Atom(usize),
}

impl Atomic for Label {
    fn bottom() -> Label {
        Label::Bottom
    }

    fn is_bottom(&self) -> bool {
        *self == Label::Bottom
    }
}

/// The same formula built with the checker's derived-form constructors.
pub fn to_ctl(f: &Formula) -> Ctl<Label> {
    use Formula::*;
    let c = to_ctl;
    match f {
        Atom(i) => Ctl::State(Label::Atom(*i)),
        True => Ctl::top(),
        False => Ctl::bottom(),
        Not(a) => Ctl::not(c(a)),
        And(a, b) => Ctl::and(c(a), c(b)),
        Or(a, b) => Ctl::or(c(a), c(b)),
        Imp(a, b) => Ctl::implies(c(a), c(b)),
        EX(a) => Ctl::ex(c(a)),
        AX(a) => Ctl::ax(c(a)),
        EF(a) => Ctl::ef(c(a)),
        AF(a) => Ctl::af(c(a)),
        EG(a) => Ctl::eg(c(a)),
        AG(a) => Ctl::ag(c(a)),
        EU(a, b) => Ctl::eu(c(a), c(b)),
        AU(a, b) => Ctl::au(c(a), c(b)),
    }
}

/// Path-enumerating model checker.
pub struct Oracle<'t> {
    tree: &'t RandomTree,
    memo: HashMap<(*const Formula, usize), bool>,
}

impl<'t> Oracle<'t> {
    pub fn new(tree: &'t RandomTree) -> Oracle<'t> {
        Oracle {
            tree,
            memo: HashMap::new(),
        }
    }

    /// Every maximal path from `node`, as node lists ending at a leaf.
    fn paths(&self, node: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack = vec![vec![node]];
        while let Some(path) = stack.pop() {
            let last = *path.last().unwrap();
            let kids = self.tree.children[last].clone();
            if kids.is_empty() {
                out.push(path);
                continue;
            }
            for c in kids {
                let mut p = path.clone();
                p.push(c);
                stack.push(p);
            }
        }
        out
    }

    /// Position `i` of a stuttered path.
    fn at(path: &[usize], i: usize) -> usize {
        path[i.min(path.len() - 1)]
    }

    pub fn holds(&mut self, f: &Formula, node: usize) -> bool {
        let key = (f as *const Formula, node);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        use Formula::*;
        let v = match f {
            Atom(i) => self.tree.labels[node][*i],
            True => true,
            False => false,
            Not(a) => !self.holds(a, node),
            And(a, b) => self.holds(a, node) && self.holds(b, node),
            Or(a, b) => self.holds(a, node) || self.holds(b, node),
            Imp(a, b) => !self.holds(a, node) || self.holds(b, node),
            EX(a) => self.paths(node).iter().any(|p| self.holds(a, Self::at(p, 1))),
            AX(a) => self.paths(node).iter().all(|p| self.holds(a, Self::at(p, 1))),
            EF(a) => self.paths(node).iter().any(|p| p.iter().any(|&n| self.holds(a, n))),
            AF(a) => self.paths(node).iter().all(|p| p.iter().any(|&n| self.holds(a, n))),
            EG(a) => self.paths(node).iter().any(|p| p.iter().all(|&n| self.holds(a, n))),
            AG(a) => self.paths(node).iter().all(|p| p.iter().all(|&n| self.holds(a, n))),
            EU(a, b) => self.paths(node).iter().any(|p| self.until(a, b, p)),
            AU(a, b) => self.paths(node).iter().all(|p| self.until(a, b, p)),
        };
        self.memo.insert(key, v);
        v
    }

    /// `a U b` along one stuttered path; positions past the leaf repeat it,
    /// so checking up to the leaf is enough.
    fn until(&mut self, a: &Formula, b: &Formula, path: &[usize]) -> bool {
        for &n in path {
            if self.holds(b, n) {
                return true;
            }
            if !self.holds(a, n) {
                return false;
            }
        }
        false
    }
}

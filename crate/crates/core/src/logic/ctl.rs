//! Bottom-up CTL labelling over finite trees, with leaf stuttering.

use std::ops::Range;

use super::formula::{Atomic, Ctl};
use super::Truth;
use crate::executor::ExecTree;

/// A finite tree stored as an arena: node 0 is the root and every child has
/// a larger id than its parent, so descending ids visit children first.
pub trait TreeShape {
    fn node_count(&self) -> usize;
    fn children(&self, node: usize) -> Range<usize>;
}

impl TreeShape for ExecTree {
    fn node_count(&self) -> usize {
        self.len()
    }

    fn children(&self, node: usize) -> Range<usize> {
        ExecTree::children(self, node)
    }
}

/// Where an explanation ends: the state subformula (by preorder index in
/// [`Ctl::states`]), the tree node it was evaluated at, and its value there.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Focus {
    pub state_index: usize,
    pub node: usize,
    pub value: Truth,
}

/// A root-to-node path justifying a value, plus the state formula that
/// decides it at the last node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Explanation {
    pub path: Vec<usize>,
    pub focus: Focus,
}

/// Truth values of every subformula at every tree node.
pub struct Labelling<'f, S> {
    /// Subformulas in preorder; index 0 is the whole formula.
    subs: Vec<&'f Ctl<S>>,
    kids: Vec<[usize; 2]>,
    /// Preorder index among state subformulas, for `State` entries.
    state_index: Vec<usize>,
    values: Vec<Vec<Truth>>,
}

fn flatten<'f, S>(f: &'f Ctl<S>, subs: &mut Vec<&'f Ctl<S>>, kids: &mut Vec<[usize; 2]>) -> usize {
    let id = subs.len();
    subs.push(f);
    kids.push([usize::MAX; 2]);
    match f {
        Ctl::State(_) => {}
        Ctl::Implies(a, b) | Ctl::EU(a, b) => {
            let x = flatten(a, subs, kids);
            let y = flatten(b, subs, kids);
            kids[id] = [x, y];
        }
        Ctl::EX(a) | Ctl::AF(a) => {
            let x = flatten(a, subs, kids);
            kids[id] = [x, usize::MAX];
        }
    }
    id
}

/// Label `tree` with every subformula of `f`. `atom` evaluates a state
/// formula at a node; each (state subformula, node) pair is asked once.
pub fn label<'f, S, T: TreeShape>(
    f: &'f Ctl<S>,
    tree: &T,
    mut atom: impl FnMut(&S, usize) -> Truth,
) -> Labelling<'f, S> {
    let mut subs = Vec::new();
    let mut kids = Vec::new();
    flatten(f, &mut subs, &mut kids);
    let mut state_index = vec![usize::MAX; subs.len()];
    let mut k = 0;
    for (i, s) in subs.iter().enumerate() {
        if matches!(s, Ctl::State(_)) {
            state_index[i] = k;
            k += 1;
        }
    }
    let n = tree.node_count();
    let mut values: Vec<Vec<Truth>> = vec![Vec::new(); subs.len()];
    // children have larger preorder ids than their parent
    for id in (0..subs.len()).rev() {
        let [x, y] = kids[id];
        let mut out = vec![Truth::False; n];
        match subs[id] {
            Ctl::State(s) => {
                for (node, v) in out.iter_mut().enumerate() {
                    *v = atom(s, node);
                }
            }
            Ctl::Implies(..) => {
                for (node, v) in out.iter_mut().enumerate() {
                    *v = values[x][node].implies(values[y][node]);
                }
            }
            Ctl::EX(_) => {
                for (node, v) in out.iter_mut().enumerate() {
                    let cs = tree.children(node);
                    *v = if cs.is_empty() {
                        values[x][node]
                    } else {
                        cs.fold(Truth::False, |acc, c| acc.or(values[x][c]))
                    };
                }
            }
            Ctl::EU(..) => {
                for node in (0..n).rev() {
                    let cs = tree.children(node);
                    let (a, b) = (values[x][node], values[y][node]);
                    out[node] = if cs.is_empty() {
                        b
                    } else {
                        let next = cs.fold(Truth::False, |acc, c| acc.or(out[c]));
                        b.or(a.and(next))
                    };
                }
            }
            Ctl::AF(_) => {
                for node in (0..n).rev() {
                    let cs = tree.children(node);
                    let a = values[x][node];
                    out[node] = if cs.is_empty() {
                        a
                    } else {
                        let all = cs.fold(Truth::True, |acc, c| acc.and(out[c]));
                        a.or(all)
                    };
                }
            }
        }
        values[id] = out;
    }
    Labelling {
        subs,
        kids,
        state_index,
        values,
    }
}

impl<S: Atomic> Labelling<'_, S> {
    /// Value of the whole formula at `node`.
    pub fn value(&self, node: usize) -> Truth {
        self.values[0][node]
    }

    /// Value of a state subformula (by [`Ctl::states`] index) at `node`.
    pub fn state_value(&self, state_index: usize, node: usize) -> Truth {
        let id = self
            .state_index
            .iter()
            .position(|&k| k == state_index)
            .expect("state index");
        self.values[id][node]
    }

    /// Justify the value of the whole formula at `start` (normally the
    /// root) with a single path: a witness for true existential claims, a
    /// counterexample for false universal ones, the first undefined state
    /// formula otherwise.
    pub fn explain<T: TreeShape>(&self, tree: &T, start: usize) -> Explanation {
        let mut path = vec![start];
        let mut id = 0;
        let mut node = start;
        loop {
            let v = self.values[id][node];
            let [x, y] = self.kids[id];
            let at = |f: usize, n: usize| self.values[f][n];
            let cs = tree.children(node);
            let leaf = cs.is_empty();
            let find = |f: usize, want: Truth| cs.clone().find(|&c| at(f, c) == want);
            // Either move to a subformula at this node or follow an edge.
            let (next_id, next_node) = match self.subs[id] {
                Ctl::State(_) => {
                    return Explanation {
                        path,
                        focus: Focus {
                            state_index: self.state_index[id],
                            node,
                            value: v,
                        },
                    };
                }
                Ctl::Implies(_, b) => {
                    let rhs_is_bottom = matches!(&**b, Ctl::State(s) if s.is_bottom());
                    let go_left = match v {
                        Truth::True => at(x, node) == Truth::False,
                        Truth::False => rhs_is_bottom,
                        Truth::Undefined => at(x, node) == Truth::Undefined,
                    };
                    (if go_left { x } else { y }, node)
                }
                Ctl::EX(_) if leaf => (x, node),
                Ctl::EX(_) => {
                    let c = if v == Truth::False { None } else { find(x, v) };
                    (x, c.unwrap_or(cs.start))
                }
                Ctl::EU(..) if leaf => (y, node),
                Ctl::EU(..) => {
                    let (a, b) = (at(x, node), at(y, node));
                    match v {
                        Truth::True if b == Truth::True => (y, node),
                        Truth::True => (id, find(id, v).expect("a child continues the witness")),
                        // no path reaches b: follow the leftmost until a fails
                        Truth::False if a == Truth::False => (x, node),
                        Truth::False => (id, cs.start),
                        Truth::Undefined if b == Truth::Undefined => (y, node),
                        Truth::Undefined if a == Truth::Undefined => (x, node),
                        Truth::Undefined => (id, find(id, v).expect("an undefined child")),
                    }
                }
                Ctl::AF(_) if leaf => (x, node),
                Ctl::AF(_) => {
                    let a = at(x, node);
                    match v {
                        Truth::True if a == Truth::True => (x, node),
                        Truth::True => (id, cs.start),
                        Truth::False => (id, find(id, v).expect("a child continues the counterexample")),
                        Truth::Undefined if a == Truth::Undefined => (x, node),
                        Truth::Undefined => (id, find(id, v).expect("an undefined child")),
                    }
                }
            };
            if next_node != node {
                path.push(next_node);
            }
            id = next_id;
            node = next_node;
        }
    }
}

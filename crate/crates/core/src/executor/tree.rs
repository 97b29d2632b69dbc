use std::fmt::Write;
use std::ops::Range;

use thiserror::Error;

use super::state::{Configuration, Status};
use super::step::{Action, ActionKind, LeafKind, Machine};

pub const DEFAULT_MAX_DEPTH: usize = 100_000;
pub const DEFAULT_MAX_NODES: usize = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Longest allowed path, in steps.
    pub max_depth: usize,
    pub max_nodes: usize,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits {
            max_depth: DEFAULT_MAX_DEPTH,
            max_nodes: DEFAULT_MAX_NODES,
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum BuildError {
    /// `path` leads from the root to a node at the depth limit that can still move.
    #[error("depth limit of {limit} steps exceeded")]
    DepthExceeded { limit: usize, path: Vec<Action> },
    /// `path` leads to the node whose expansion would pass the limit.
    #[error("node limit of {limit} exceeded")]
    NodesExceeded { limit: usize, path: Vec<Action> },
}

impl BuildError {
    pub fn path(&self) -> &[Action] {
        match self {
            BuildError::DepthExceeded { path, .. } | BuildError::NodesExceeded { path, .. } => path,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Node {
    pub config: Configuration,
    pub parent: Option<usize>,
    /// Edge label from the parent.
    pub action: Option<Action>,
    pub depth: usize,
    /// Children occupy `first_child..first_child + child_count`.
    pub first_child: usize,
    pub child_count: usize,
    pub leaf: Option<LeafKind>,
}

/// Arena of execution-tree nodes. Node 0 is the root, siblings are
/// contiguous and every child has a larger id than its parent.
#[derive(Clone, Debug)]
pub struct ExecTree {
    pub nodes: Vec<Node>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TreeStats {
    pub nodes: usize,
    pub leaves: usize,
    pub terminated_leaves: usize,
    pub deadlocked_leaves: usize,
    pub faulted_leaves: usize,
    pub max_depth: usize,
    /// Nodes whose children come from a random measurement.
    pub measurement_branches: usize,
}

impl<'p> Machine<'p> {
    /// Explore every execution depth-first, children in canonical order.
    pub fn build_tree(&self, limits: Limits) -> Result<ExecTree, BuildError> {
        let root = Node {
            config: self.initial_configuration(),
            parent: None,
            action: None,
            depth: 0,
            first_child: 0,
            child_count: 0,
            leaf: None,
        };
        let mut tree = ExecTree { nodes: vec![root] };
        let mut stack = vec![0usize];
        while let Some(id) = stack.pop() {
            let succ = self.successors(&tree.nodes[id].config);
            if succ.is_empty() {
                let kind = self.leaf_kind(&tree.nodes[id].config);
                tree.nodes[id].leaf = Some(kind);
                continue;
            }
            let depth = tree.nodes[id].depth;
            if depth >= limits.max_depth {
                return Err(BuildError::DepthExceeded {
                    limit: limits.max_depth,
                    path: tree.actions_to(id),
                });
            }
            if tree.nodes.len() + succ.len() > limits.max_nodes {
                return Err(BuildError::NodesExceeded {
                    limit: limits.max_nodes,
                    path: tree.actions_to(id),
                });
            }
            let first = tree.nodes.len();
            tree.nodes[id].first_child = first;
            tree.nodes[id].child_count = succ.len();
            for (action, config) in succ {
                tree.nodes.push(Node {
                    config,
                    parent: Some(id),
                    action: Some(action),
                    depth: depth + 1,
                    first_child: 0,
                    child_count: 0,
                    leaf: None,
                });
            }
            stack.extend((first..tree.nodes.len()).rev());
        }
        Ok(tree)
    }
}

impl ExecTree {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn children(&self, id: usize) -> Range<usize> {
        let n = &self.nodes[id];
        n.first_child..n.first_child + n.child_count
    }

    pub fn is_leaf(&self, id: usize) -> bool {
        self.nodes[id].child_count == 0
    }

    /// Leaf ids in depth-first (left to right) order.
    pub fn leaves_in_order(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![0usize];
        while let Some(id) = stack.pop() {
            if self.is_leaf(id) {
                out.push(id);
            } else {
                stack.extend(self.children(id).rev());
            }
        }
        out
    }

    /// Node ids from the root to `id`, inclusive.
    pub fn path_to(&self, id: usize) -> Vec<usize> {
        let mut path = vec![id];
        let mut cur = id;
        while let Some(p) = self.nodes[cur].parent {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    /// Edge labels from the root to `id`.
    pub fn actions_to(&self, id: usize) -> Vec<Action> {
        self.path_to(id)
            .into_iter()
            .filter_map(|n| self.nodes[n].action.clone())
            .collect()
    }

    pub fn stats(&self) -> TreeStats {
        let mut s = TreeStats {
            nodes: self.nodes.len(),
            ..TreeStats::default()
        };
        for (id, n) in self.nodes.iter().enumerate() {
            s.max_depth = s.max_depth.max(n.depth);
            match n.leaf {
                Some(LeafKind::Terminated) => s.terminated_leaves += 1,
                Some(LeafKind::Deadlock) => s.deadlocked_leaves += 1,
                Some(LeafKind::Faulted) => s.faulted_leaves += 1,
                None => {}
            }
            if self.children(id).any(|c| {
                matches!(
                    self.nodes[c].action,
                    Some(Action {
                        kind: ActionKind::Measure { random: true, .. },
                        ..
                    })
                )
            }) {
                s.measurement_branches += 1;
            }
        }
        s.leaves = s.terminated_leaves + s.deadlocked_leaves + s.faulted_leaves;
        s
    }

    /// Graphviz rendering: nodes show process control points and the
    /// classical store, edges show actions, leaves are double-bordered.
    pub fn to_dot(&self, machine: &Machine<'_>) -> String {
        let prog = machine.program;
        let mut out = String::from("digraph execution {\n  node [shape=box, fontname=\"monospace\"];\n");
        for (id, n) in self.nodes.iter().enumerate() {
            let procs: Vec<String> = n
                .config
                .procs
                .iter()
                .enumerate()
                .map(|(i, ps)| {
                    let name = &prog.processes[i].name;
                    match &ps.status {
                        Status::Running => format!("{name}@{}", ps.pc),
                        Status::Terminated => format!("{name}:done"),
                        Status::Faulted(r) => format!("{name}:fault({r})"),
                    }
                })
                .collect();
            let mut label = format!(
                "#{id}\\n{}\\n{}",
                escape(&procs.join(" ")),
                escape(&n.config.store_text(prog))
            );
            let mut extra = "";
            if let Some(kind) = n.leaf {
                let _ = write!(
                    label,
                    "\\n{}",
                    match kind {
                        LeafKind::Terminated => "terminated",
                        LeafKind::Deadlock => "deadlock",
                        LeafKind::Faulted => "faulted",
                    }
                );
                extra = ", peripheries=2";
            }
            let _ = writeln!(out, "  n{id} [label=\"{label}\"{extra}];");
        }
        for (id, n) in self.nodes.iter().enumerate() {
            if let (Some(p), Some(a)) = (n.parent, &n.action) {
                let _ = writeln!(out, "  n{p} -> n{id} [label=\"{}\"];", escape(&machine.describe(a)));
            }
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

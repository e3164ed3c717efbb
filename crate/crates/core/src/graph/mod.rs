//! Deduplicated computation graph with a reduce/finalize stage split.
//!
//! Reduce nodes run a kernel on every chunk and merge the partials in a fixed
//! chunk-order tree, so their output does not depend on the worker count.
//! Finalize nodes run once, single-threaded, on the small merged values.

mod exec;
pub mod ops;

pub use exec::{execute, execute_with, executions_on_this_thread, Execution, Progress};

use crate::error::{EdaError, Result};
use crate::frame::DataFrame;
use crate::intermediate::Intermediate;
use std::any::Any;
use std::collections::HashMap;
use std::fmt::{self, Write};
use std::sync::Arc;

pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    Reduce,
    Finalize,
}

impl Stage {
    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Reduce => "reduce",
            Stage::Finalize => "finalize",
        }
    }
}

/// Structural identity of a node: equal keys are the same computation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NodeKey {
    pub op: &'static str,
    pub params: String,
    pub deps: Vec<NodeId>,
}

impl fmt::Display for NodeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.op, self.params)
    }
}

/// Canonical `name=value;...` encoding with names sorted.
pub fn params(pairs: &[(&str, &dyn fmt::Display)]) -> String {
    let mut items: Vec<(&str, String)> = pairs.iter().map(|(k, v)| (*k, v.to_string())).collect();
    items.sort_by(|a, b| a.0.cmp(b.0));
    let mut out = String::new();
    for (i, (k, v)) in items.iter().enumerate() {
        if i > 0 {
            out.push(';');
        }
        let _ = write!(out, "{k}={v}");
    }
    out
}

/// Inputs available to a reduce kernel for one chunk.
pub struct ChunkCtx<'a> {
    pub df: &'a DataFrame,
    pub chunk: usize,
    /// Global row index of the chunk's first row.
    pub offset: usize,
    pub deps: &'a [Arc<Intermediate>],
}

pub trait Reduce: Send + Sync + 'static {
    type Partial: Send + Default + 'static;
    fn map(&self, ctx: &ChunkCtx<'_>) -> Result<Self::Partial>;
    fn merge(&self, a: Self::Partial, b: Self::Partial) -> Self::Partial;
    fn finish(&self, p: Self::Partial, df: &DataFrame, deps: &[Arc<Intermediate>]) -> Result<Intermediate>;
}

/// Finalize kernels see only merged inputs and dataset metadata (names, dictionaries).
pub trait Finalize: Send + Sync + 'static {
    fn run(&self, df: &DataFrame, inputs: &[Arc<Intermediate>]) -> Result<Intermediate>;
}

type AnyPartial = Box<dyn Any + Send>;

trait ErasedReduce: Send + Sync {
    fn map(&self, ctx: &ChunkCtx<'_>) -> Result<AnyPartial>;
    fn empty(&self) -> AnyPartial;
    fn merge(&self, a: AnyPartial, b: AnyPartial) -> AnyPartial;
    fn finish(&self, p: AnyPartial, df: &DataFrame, deps: &[Arc<Intermediate>]) -> Result<Intermediate>;
}

fn unbox<P: 'static>(p: AnyPartial) -> P {
    match p.downcast::<P>() {
        Ok(p) => *p,
        Err(_) => unreachable!("partial type is fixed per kernel"),
    }
}

impl<R: Reduce> ErasedReduce for R {
    fn map(&self, ctx: &ChunkCtx<'_>) -> Result<AnyPartial> {
        Ok(Box::new(Reduce::map(self, ctx)?))
    }

    fn empty(&self) -> AnyPartial {
        Box::new(R::Partial::default())
    }

    fn merge(&self, a: AnyPartial, b: AnyPartial) -> AnyPartial {
        Box::new(Reduce::merge(self, unbox(a), unbox(b)))
    }

    fn finish(&self, p: AnyPartial, df: &DataFrame, deps: &[Arc<Intermediate>]) -> Result<Intermediate> {
        Reduce::finish(self, unbox(p), df, deps)
    }
}

#[derive(Clone)]
enum Kernel {
    Reduce(Arc<dyn ErasedReduce>),
    Finalize(Arc<dyn Finalize>),
}

#[derive(Clone)]
pub struct Node {
    pub key: NodeKey,
    kernel: Kernel,
}

impl Node {
    pub fn stage(&self) -> Stage {
        match self.kernel {
            Kernel::Reduce(_) => Stage::Reduce,
            Kernel::Finalize(_) => Stage::Finalize,
        }
    }
}

#[derive(Clone, Default)]
pub struct ComputeDag {
    nodes: Vec<Node>,
    index: HashMap<NodeKey, NodeId>,
}

impl ComputeDag {
    pub fn new() -> Self {
        Self::default()
    }

    fn insert(&mut self, op: &'static str, params: String, deps: Vec<NodeId>, kernel: impl FnOnce() -> Kernel) -> Result<NodeId> {
        if let Some(&bad) = deps.iter().find(|&&d| d >= self.nodes.len()) {
            return Err(EdaError::CycleDetected(bad));
        }
        let key = NodeKey { op, params, deps };
        if let Some(&id) = self.index.get(&key) {
            return Ok(id);
        }
        let id = self.nodes.len();
        self.index.insert(key.clone(), id);
        self.nodes.push(Node { key, kernel: kernel() });
        Ok(id)
    }

    /// Add a chunk-parallel node, or return the existing node with the same key.
    pub fn add_reduce<R: Reduce>(&mut self, op: &'static str, params: String, deps: Vec<NodeId>, kernel: R) -> Result<NodeId> {
        self.insert(op, params, deps, || Kernel::Reduce(Arc::new(kernel)))
    }

    /// Add a single-threaded node, or return the existing node with the same key.
    pub fn add_finalize<F: Finalize>(&mut self, op: &'static str, params: String, deps: Vec<NodeId>, kernel: F) -> Result<NodeId> {
        self.insert(op, params, deps, || Kernel::Finalize(Arc::new(kernel)))
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn find(&self, key: &NodeKey) -> Option<NodeId> {
        self.index.get(key).copied()
    }

    /// Number of nodes that take `id` as an input.
    pub fn consumers(&self, id: NodeId) -> usize {
        self.nodes.iter().filter(|n| n.key.deps.contains(&id)).count()
    }

    /// Ids of nodes whose op is `op`.
    pub fn with_op<'a>(&'a self, op: &'a str) -> impl Iterator<Item = NodeId> + 'a {
        self.nodes.iter().enumerate().filter(move |(_, n)| n.key.op == op).map(|(i, _)| i)
    }

    /// Partition into reduce and finalize node ids, both in topological order.
    pub fn stage_split(&self) -> Result<(Vec<NodeId>, Vec<NodeId>)> {
        let mut reduce = Vec::new();
        let mut finalize = Vec::new();
        for (id, node) in self.nodes.iter().enumerate() {
            match node.stage() {
                Stage::Reduce => {
                    if let Some(&dep) = node.key.deps.iter().find(|&&d| self.nodes[d].stage() == Stage::Finalize) {
                        return Err(EdaError::StageViolation { node: id, dep });
                    }
                    reduce.push(id);
                }
                Stage::Finalize => finalize.push(id),
            }
        }
        Ok((reduce, finalize))
    }

    /// Text adjacency listing, one node per line: `n<id> <stage> <op>(<params>) <- n<dep> ...`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (id, node) in self.nodes.iter().enumerate() {
            let _ = write!(out, "n{id} {} {}", node.stage().as_str(), node.key);
            if !node.key.deps.is_empty() {
                out.push_str(" <-");
                for d in &node.key.deps {
                    let _ = write!(out, " n{d}");
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Node count of a dump produced by [`ComputeDag::dump`].
pub fn dump_node_count(dump: &str) -> usize {
    dump.lines().filter(|l| l.starts_with('n')).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Rows;

    impl Reduce for Rows {
        type Partial = u64;
        fn map(&self, ctx: &ChunkCtx<'_>) -> Result<u64> {
            Ok(ctx.df.chunk_meta().chunk_row_counts[ctx.chunk] as u64)
        }
        fn merge(&self, a: u64, b: u64) -> u64 {
            a + b
        }
        fn finish(&self, p: u64, _: &DataFrame, _: &[Arc<Intermediate>]) -> Result<Intermediate> {
            Ok(Intermediate::Count(p))
        }
    }

    struct Double;

    impl Finalize for Double {
        fn run(&self, _: &DataFrame, inputs: &[Arc<Intermediate>]) -> Result<Intermediate> {
            match &*inputs[0] {
                Intermediate::Count(c) => Ok(Intermediate::Count(2 * c)),
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn dedup_by_key() {
        let mut g = ComputeDag::new();
        let a = g.add_reduce("rows", String::new(), vec![], Rows).unwrap();
        let b = g.add_reduce("rows", String::new(), vec![], Rows).unwrap();
        assert_eq!(a, b);
        let c = g.add_reduce("rows", "x=1".into(), vec![], Rows).unwrap();
        assert_ne!(a, c);
        assert_eq!(g.len(), 2);
        assert!(matches!(g.add_finalize("d", String::new(), vec![9], Double), Err(EdaError::CycleDetected(9))));
    }

    #[test]
    fn split_and_violation() {
        let mut g = ComputeDag::new();
        assert_eq!(g.stage_split().unwrap(), (vec![], vec![]));
        let r = g.add_reduce("rows", String::new(), vec![], Rows).unwrap();
        let f = g.add_finalize("double", String::new(), vec![r], Double).unwrap();
        assert_eq!(g.stage_split().unwrap(), (vec![r], vec![f]));
        g.add_reduce("rows", "bad".into(), vec![f], Rows).unwrap();
        assert!(matches!(g.stage_split(), Err(EdaError::StageViolation { dep, .. }) if dep == f));
    }

    #[test]
    fn params_are_canonical() {
        assert_eq!(params(&[("z", &1), ("a", &"x")]), "a=x;z=1");
    }

    #[test]
    fn dump_lists_edges() {
        let mut g = ComputeDag::new();
        let r = g.add_reduce("rows", String::new(), vec![], Rows).unwrap();
        g.add_finalize("double", String::new(), vec![r], Double).unwrap();
        let d = g.dump();
        assert_eq!(d, "n0 reduce rows()\nn1 finalize double() <- n0\n");
        assert_eq!(dump_node_count(&d), 2);
    }
}

use super::{AnyPartial, ChunkCtx, ComputeDag, ErasedReduce, Kernel, NodeId, Stage};
use crate::error::{EdaError, Result};
use crate::frame::DataFrame;
use crate::intermediate::Intermediate;
use rayon::prelude::*;
use std::cell::Cell;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

thread_local! {
    static EXECUTIONS: Cell<usize> = const { Cell::new(0) };
}

/// Number of graph executions started from the calling thread.
pub fn executions_on_this_thread() -> usize {
    EXECUTIONS.with(|c| c.get())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Progress {
    pub stage: Stage,
    pub completed: usize,
    pub total: usize,
}

pub struct Execution {
    values: Vec<Arc<Intermediate>>,
    /// Per node, how many chunk-kernel invocations ran.
    pub chunk_visits: Vec<usize>,
}

impl Execution {
    pub fn get(&self, id: NodeId) -> &Intermediate {
        &self.values[id]
    }

    pub fn shared(&self, id: NodeId) -> Arc<Intermediate> {
        Arc::clone(&self.values[id])
    }
}

pub fn execute(g: &ComputeDag, df: &DataFrame, workers: usize) -> Result<Execution> {
    execute_with(g, df, workers, &mut |_| {})
}

/// Run the reduce stage chunk-parallel on `workers` threads, then the finalize
/// stage in node order on the calling thread.
pub fn execute_with(g: &ComputeDag, df: &DataFrame, workers: usize, progress: &mut dyn FnMut(Progress)) -> Result<Execution> {
    EXECUTIONS.with(|c| c.set(c.get() + 1));
    let (reduce, finalize) = g.stage_split()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| EdaError::KernelError { node: "scheduler".into(), cause: e.to_string() })?;

    let n = g.len();
    let mut values: Vec<Option<Arc<Intermediate>>> = vec![None; n];
    let visits: Vec<AtomicUsize> = (0..n).map(|_| AtomicUsize::new(0)).collect();
    let offsets = df.chunk_meta().offsets();
    let n_chunks = df.n_chunks();
    let kernel_error = |id: NodeId, e: EdaError| EdaError::KernelError {
        node: format!("n{id} {}", g.node(id).key),
        cause: e.to_string(),
    };

    // Reduce nodes grouped into levels so each node's reduce inputs are ready.
    let mut level = vec![0usize; n];
    for &id in &reduce {
        level[id] = g.node(id).key.deps.iter().map(|&d| level[d] + 1).max().unwrap_or(0);
    }
    let depth = reduce.iter().map(|&id| level[id] + 1).max().unwrap_or(0);
    let mut done = 0;
    for l in 0..depth {
        let nodes: Vec<NodeId> = reduce.iter().copied().filter(|&id| level[id] == l).collect();
        let deps: Vec<Vec<Arc<Intermediate>>> = nodes
            .iter()
            .map(|&id| g.node(id).key.deps.iter().map(|&d| Arc::clone(values[d].as_ref().expect("dependency evaluated"))).collect())
            .collect();
        let items: Vec<(usize, usize)> = (0..nodes.len()).flat_map(|i| (0..n_chunks).map(move |c| (i, c))).collect();
        let partials: Vec<Result<AnyPartial>> = pool.install(|| {
            items
                .par_iter()
                .map(|&(i, chunk)| {
                    let id = nodes[i];
                    visits[id].fetch_add(1, Ordering::Relaxed);
                    let ctx = ChunkCtx { df, chunk, offset: offsets[chunk], deps: &deps[i] };
                    reduce_kernel(g, id).map(&ctx).map_err(|e| kernel_error(id, e))
                })
                .collect()
        });
        let mut partials = partials.into_iter();
        for (i, &id) in nodes.iter().enumerate() {
            let kernel = reduce_kernel(g, id);
            let parts = partials.by_ref().take(n_chunks).collect::<Result<Vec<_>>>()?;
            let merged = tree_merge(kernel, parts);
            let out = kernel.finish(merged, df, &deps[i]).map_err(|e| kernel_error(id, e))?;
            values[id] = Some(Arc::new(out));
            done += 1;
            progress(Progress { stage: Stage::Reduce, completed: done, total: reduce.len() });
        }
    }

    for (k, &id) in finalize.iter().enumerate() {
        let node = g.node(id);
        let inputs: Vec<Arc<Intermediate>> = node.key.deps.iter().map(|&d| Arc::clone(values[d].as_ref().expect("dependency evaluated"))).collect();
        let Kernel::Finalize(f) = &node.kernel else { unreachable!("stage_split returned a reduce node") };
        let out = f.run(df, &inputs).map_err(|e| kernel_error(id, e))?;
        values[id] = Some(Arc::new(out));
        progress(Progress { stage: Stage::Finalize, completed: k + 1, total: finalize.len() });
    }

    Ok(Execution {
        values: values.into_iter().map(|v| v.expect("every node evaluated")).collect(),
        chunk_visits: visits.into_iter().map(AtomicUsize::into_inner).collect(),
    })
}

fn reduce_kernel(g: &ComputeDag, id: NodeId) -> &dyn ErasedReduce {
    match &g.node(id).kernel {
        Kernel::Reduce(r) => r.as_ref(),
        Kernel::Finalize(_) => unreachable!("reduce stage holds reduce nodes only"),
    }
}

/// Pairwise merge in chunk order: ((p0 p1) (p2 p3)) ...; fixed regardless of scheduling.
fn tree_merge(kernel: &dyn ErasedReduce, mut parts: Vec<AnyPartial>) -> AnyPartial {
    if parts.is_empty() {
        return kernel.empty();
    }
    while parts.len() > 1 {
        let mut next = Vec::with_capacity(parts.len().div_ceil(2));
        let mut it = parts.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(kernel.merge(a, b)),
                None => next.push(a),
            }
        }
        parts = next;
    }
    parts.pop().expect("one partial left")
}

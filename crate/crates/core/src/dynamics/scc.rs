//! Iterative Tarjan strongly connected components.

use crate::complex::SimplexId;

const UNVISITED: usize = usize::MAX;

/// Strongly connected components of the subgraph induced on nodes with
/// `active(v)`. Returns `(component of each node, component count)`;
/// inactive nodes get `usize::MAX`. Components are numbered in reverse
/// topological order of the condensation: every edge between distinct
/// components goes from a higher to a lower number.
pub(crate) fn tarjan<'a>(
    n: usize,
    active: impl Fn(usize) -> bool,
    succ: impl Fn(usize) -> &'a [SimplexId],
) -> (Vec<usize>, usize) {
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNVISITED; n];
    let mut stack: Vec<usize> = Vec::new();
    // (node, position in its successor list)
    let mut frames: Vec<(usize, usize)> = Vec::new();
    let mut next_index = 0;
    let mut count = 0;

    for root in 0..n {
        if index[root] != UNVISITED || !active(root) {
            continue;
        }
        frames.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(frame) = frames.last_mut() {
            let (v, pos) = *frame;
            let targets = succ(v);
            if pos < targets.len() {
                frame.1 += 1;
                let w = targets[pos].index();
                if !active(w) {
                    continue;
                }
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            frames.pop();
            if let Some(&(parent, _)) = frames.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp[w] = count;
                    if w == v {
                        break;
                    }
                }
                count += 1;
            }
        }
    }
    (comp, count)
}

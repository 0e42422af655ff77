//! Explicit-graph helpers: reachability, strongly connected components and
//! generalized Büchi lasso search. Graphs are adjacency lists indexed by node.

use std::collections::VecDeque;

/// Nodes reachable from `roots` (including the roots).
pub fn reachable(succ: &[Vec<usize>], roots: impl IntoIterator<Item = usize>) -> Vec<bool> {
    let mut seen = vec![false; succ.len()];
    let mut stack: Vec<usize> = Vec::new();
    for r in roots {
        if !seen[r] {
            seen[r] = true;
            stack.push(r);
        }
    }
    while let Some(v) = stack.pop() {
        for &w in &succ[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Reverse adjacency.
pub fn predecessors(succ: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut pred = vec![Vec::new(); succ.len()];
    for (v, ws) in succ.iter().enumerate() {
        for &w in ws {
            pred[w].push(v);
        }
    }
    pred
}

/// Strongly connected components (iterative Tarjan). Components are returned
/// in reverse topological order; `comp[v]` gives the component of `v`.
/// Only nodes with `active[v]` participate; edges to inactive nodes are ignored.
pub fn scc(succ: &[Vec<usize>], active: &[bool]) -> (Vec<Vec<usize>>, Vec<usize>) {
    const UNSEEN: usize = usize::MAX;
    let n = succ.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut next = 0;
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if !active[root] || index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < succ[v].len() {
                let w = succ[v][*pos];
                *pos += 1;
                if !active[w] {
                    continue;
                }
                if index[w] == UNSEEN {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let id = comps.len();
                    let mut members = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp[w] = id;
                        members.push(w);
                        if w == v {
                            break;
                        }
                    }
                    members.sort_unstable();
                    comps.push(members);
                }
            }
        }
    }
    (comps, comp)
}

/// A component carries an infinite path iff it has an internal edge.
pub fn is_nontrivial(succ: &[Vec<usize>], members: &[usize], comp: &[usize]) -> bool {
    members.len() > 1 || {
        let v = members[0];
        succ[v].iter().any(|&w| w == v && comp[w] == comp[v])
    }
}

/// Nodes that are reachable from `roots` and can reach a non-trivial
/// component meeting every acceptance set (i.e. start an accepting run).
pub fn productive(succ: &[Vec<usize>], roots: &[usize], acceptance: &[Vec<bool>]) -> Vec<bool> {
    let active = reachable(succ, roots.iter().copied());
    let (comps, comp) = scc(succ, &active);
    let mut good = vec![false; succ.len()];
    let mut stack = Vec::new();
    for members in &comps {
        if is_nontrivial(succ, members, &comp)
            && acceptance.iter().all(|set| members.iter().any(|&v| set[v]))
        {
            for &v in members {
                good[v] = true;
                stack.push(v);
            }
        }
    }
    let pred = predecessors(succ);
    while let Some(v) = stack.pop() {
        for &u in &pred[v] {
            if active[u] && !good[u] {
                good[u] = true;
                stack.push(u);
            }
        }
    }
    good
}

/// Finds a reachable lasso whose cycle visits every acceptance set. Returns
/// `(prefix, cycle)` as node sequences; `cycle` is non-empty and its last node
/// has an edge back to its first.
pub fn accepting_lasso(
    succ: &[Vec<usize>],
    roots: &[usize],
    acceptance: &[Vec<bool>],
) -> Option<(Vec<usize>, Vec<usize>)> {
    let active = reachable(succ, roots.iter().copied());
    let (comps, comp) = scc(succ, &active);
    let target = comps.iter().position(|members| {
        is_nontrivial(succ, members, &comp)
            && acceptance.iter().all(|set| members.iter().any(|&v| set[v]))
    })?;

    let in_target = |v: usize| active[v] && comp[v] == target;
    // prefix: BFS from the roots to the component
    let (prefix_path, entry) = {
        let is_goal = |v: usize| in_target(v);
        let path = bfs_path(succ, roots, &is_goal, &|_| true)?;
        let entry = *path.last().expect("non-empty path");
        (path, entry)
    };
    let mut prefix = prefix_path;
    prefix.pop();

    let mut cycle = vec![entry];
    let mut cur = entry;
    for set in acceptance {
        if set[cur] {
            continue;
        }
        let path = bfs_path(succ, &[cur], &|v| set[v], &in_target)?;
        cycle.extend_from_slice(&path[1..]);
        cur = *cycle.last().expect("non-empty");
    }
    // close the loop with at least one edge
    let back = bfs_path_nonempty(succ, cur, entry, &in_target)?;
    cycle.extend_from_slice(&back[1..]);
    cycle.pop();
    Some((prefix, cycle))
}

fn bfs_path(
    succ: &[Vec<usize>],
    sources: &[usize],
    goal: &dyn Fn(usize) -> bool,
    allowed: &dyn Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; succ.len()];
    let mut seen = vec![false; succ.len()];
    let mut queue = VecDeque::new();
    for &s in sources {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        if goal(v) {
            let mut path = vec![v];
            let mut cur = v;
            while parent[cur] != usize::MAX {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &w in &succ[v] {
            if !seen[w] && allowed(w) {
                seen[w] = true;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Path from `from` to `to` with at least one edge, staying inside `allowed`.
fn bfs_path_nonempty(
    succ: &[Vec<usize>],
    from: usize,
    to: usize,
    allowed: &dyn Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    let firsts: Vec<usize> = succ[from].iter().copied().filter(|&w| allowed(w)).collect();
    let mut path = bfs_path(succ, &firsts, &|v| v == to, allowed)?;
    path.insert(0, from);
    Some(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tarjan_components() {
        // 0 -> 1 -> 2 -> 0, 2 -> 3, 3 -> 3, 4 isolated
        let succ = vec![vec![1], vec![2], vec![0, 3], vec![3], vec![]];
        let (comps, comp) = scc(&succ, &[true; 5]);
        assert_eq!(comps.len(), 3);
        assert_eq!(comp[0], comp[1]);
        assert_eq!(comp[1], comp[2]);
        assert_ne!(comp[2], comp[3]);
        assert!(is_nontrivial(&succ, &comps[comp[3]], &comp));
        assert!(!is_nontrivial(&succ, &comps[comp[4]], &comp));
        // reverse topological: the sink {3} is emitted before {0,1,2}
        assert!(comp[3] < comp[0]);
    }

    #[test]
    fn lasso_visits_all_sets() {
        let succ = vec![vec![1], vec![2], vec![1, 3], vec![1]];
        let a = vec![false, false, true, false];
        let b = vec![false, false, false, true];
        let (prefix, cycle) = accepting_lasso(&succ, &[0], &[a.clone(), b.clone()]).unwrap();
        assert_eq!(prefix, vec![0]);
        assert!(cycle.iter().any(|&v| a[v]) && cycle.iter().any(|&v| b[v]));
        for w in cycle.windows(2) {
            assert!(succ[w[0]].contains(&w[1]));
        }
        assert!(succ[*cycle.last().unwrap()].contains(&cycle[0]));
        assert!(succ[*prefix.last().unwrap()].contains(&cycle[0]));
    }

    #[test]
    fn productive_nodes() {
        // 0 -> 1 (dead end), 0 -> 2 <-> 3 with 3 accepting, 4 unreachable
        let succ = vec![vec![1, 2], vec![], vec![3], vec![2], vec![2]];
        let acc = vec![false, false, false, true, false];
        let good = productive(&succ, &[0], &[acc]);
        assert_eq!(good, vec![true, false, true, true, false]);
    }

    #[test]
    fn no_lasso_without_cycle() {
        let succ = vec![vec![1], vec![]];
        assert!(accepting_lasso(&succ, &[0], &[]).is_none());
        let succ = vec![vec![0]];
        let never = vec![false];
        assert!(accepting_lasso(&succ, &[0], &[never]).is_none());
        assert!(accepting_lasso(&succ, &[0], &[]).is_some());
    }
}

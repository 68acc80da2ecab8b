use std::collections::VecDeque;

use crate::Scalar;

use super::Hypergraph;

fn intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|v| b.binary_search(v).is_ok()).collect()
}

fn contains(edge: &[usize], subset: &[usize]) -> bool {
    subset.iter().all(|v| edge.binary_search(v).is_ok())
}

fn combinations(m: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..m {
            if m - v < size - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, m, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, size, &mut Vec::with_capacity(size), &mut out);
    out
}

/// Edges reachable by an `M`-path whose first edge contains `start`.
///
/// Consecutive edges must share exactly `M` vertices and any three
/// consecutive edges must have an empty common intersection, so the search
/// state is the pair (previous edge, current edge).
fn reachable_edges(edges: &[Vec<usize>], half: usize, start: &[usize]) -> Vec<bool> {
    let n = edges.len();
    let mut adjacent = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            if i != j && intersection(&edges[i], &edges[j]).len() == half {
                adjacent[i].push(j);
            }
        }
    }

    // visited[prev * n + cur]; prev == n means "no previous edge".
    let mut visited = vec![false; (n + 1) * n];
    let mut reached = vec![false; n];
    let mut queue = VecDeque::new();
    for (i, e) in edges.iter().enumerate() {
        if contains(e, start) {
            visited[n * n + i] = true;
            queue.push_back((n, i));
        }
    }
    while let Some((prev, cur)) = queue.pop_front() {
        reached[cur] = true;
        for &next in &adjacent[cur] {
            if prev < n {
                let shared = intersection(&edges[prev], &edges[cur]);
                if !intersection(&shared, &edges[next]).is_empty() {
                    continue;
                }
            }
            let slot = cur * n + next;
            if !visited[slot] {
                visited[slot] = true;
                queue.push_back((cur, next));
            }
        }
    }
    reached
}

/// True iff every pair of `M`-subsets of the vertex set is joined by an
/// `M`-path: a sequence of hyperedges `E_1, ..., E_n` with the start subset
/// inside `E_1`, the end subset inside `E_n`, `|E_i ∩ E_{i+1}| = M` and
/// `E_i ∩ E_{i+1} ∩ E_{i+2} = ∅`.
pub fn is_m_connected<R: Scalar>(g: &Hypergraph<R>) -> bool {
    let edges = g.vertex_sets();
    let subsets = combinations(g.m, g.half);
    subsets.iter().all(|x| {
        let reached = reachable_edges(&edges, g.half, x);
        subsets
            .iter()
            .all(|y| edges.iter().zip(&reached).any(|(e, &r)| r && contains(e, y)))
    })
}

//! Search for compatible families: assignments `x_i ∈ 0..domains[i]` such
//! that `x_j = table[x_i]` for every constraint `(i, j, table)`.

use crate::error::{Error, Result};

struct Solver<'a, 'b> {
    domains: &'a [usize],
    out_edges: Vec<Vec<(usize, &'a [usize])>>,
    in_edges: Vec<Vec<(usize, &'a [usize])>>,
    val: Vec<usize>,
    nodes: usize,
    budget: usize,
    what: &'static str,
    sink: Option<&'b mut dyn FnMut(&[usize])>,
    out: Vec<Vec<usize>>,
}

const UNSET: usize = usize::MAX;

impl Solver<'_, '_> {
    // assigns `v := x` and everything it forces; pushes touched variables on
    // `trail` and returns false on conflict
    fn assign(&mut self, v: usize, x: usize, trail: &mut Vec<usize>) -> bool {
        let mut stack = vec![(v, x)];
        while let Some((v, x)) = stack.pop() {
            if self.val[v] != UNSET {
                if self.val[v] != x {
                    return false;
                }
                continue;
            }
            if x >= self.domains[v] {
                return false;
            }
            self.val[v] = x;
            trail.push(v);
            for &(u, t) in &self.in_edges[v] {
                if self.val[u] != UNSET && t[self.val[u]] != x {
                    return false;
                }
            }
            for &(w, t) in &self.out_edges[v] {
                stack.push((w, t[x]));
            }
        }
        true
    }

    fn rec(&mut self, from: usize) -> Result<()> {
        let Some(v) = (from..self.val.len()).find(|&v| self.val[v] == UNSET) else {
            match self.sink.as_mut() {
                Some(s) => s(&self.val),
                None => self.out.push(self.val.clone()),
            }
            return Ok(());
        };
        for x in 0..self.domains[v] {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::Budget { what: self.what, limit: self.budget });
            }
            let mut trail = Vec::new();
            if self.assign(v, x, &mut trail) {
                self.rec(v + 1)?;
            }
            for u in trail {
                self.val[u] = UNSET;
            }
        }
        Ok(())
    }
}

/// All compatible families in lexicographic order of the free variables. When
/// `sink` is given the families are streamed to it and not collected.
pub(crate) fn solve_families(
    domains: &[usize],
    constraints: &[(usize, usize, &[usize])],
    budget: usize,
    what: &'static str,
    sink: Option<&mut dyn FnMut(&[usize])>,
) -> Result<Vec<Vec<usize>>> {
    let n = domains.len();
    let mut out_edges = vec![Vec::new(); n];
    let mut in_edges = vec![Vec::new(); n];
    for &(i, j, t) in constraints {
        out_edges[i].push((j, t));
        in_edges[j].push((i, t));
    }
    let mut s = Solver { domains, out_edges, in_edges, val: vec![UNSET; n], nodes: 0, budget, what, sink, out: Vec::new() };
    s.rec(0)?;
    Ok(s.out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unconstrained_is_a_product() {
        let r = solve_families(&[2, 3], &[], 100, "t", None).unwrap();
        assert_eq!(r.len(), 6);
        assert_eq!(r[1], vec![0, 1]);
    }

    #[test]
    fn equalizer_by_filter() {
        // x_0 ∈ {0,1,2}, x_1 = f(x_0) = g(x_0)
        let f = [0, 1, 1];
        let g = [0, 0, 1];
        let r = solve_families(&[3, 2], &[(0, 1, &f), (0, 1, &g)], 100, "t", None).unwrap();
        let filter = (0..3).filter(|&x| f[x] == g[x]).count();
        assert_eq!(r.len(), filter);
    }

    #[test]
    fn empty_domain_kills_everything() {
        assert!(solve_families(&[0, 3], &[], 100, "t", None).unwrap().is_empty());
        assert_eq!(solve_families(&[], &[], 100, "t", None).unwrap(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn streaming_counts() {
        let mut n = 0;
        solve_families(&[3, 3, 3], &[], 1000, "t", Some(&mut |_| n += 1)).unwrap();
        assert_eq!(n, 27);
    }
}

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::constructions::opposite;
use crate::fincat::FiniteCategory;
use crate::setval::{DiagramMap, SetDiagram};

/// Weakly increasing maps `[m] → [n]` as image lists, in lexicographic order.
pub fn monotone_maps(m: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(len: usize, lo: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in lo..=n {
            cur.push(v);
            go(len, v, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m + 1, 0, n, &mut Vec::new(), &mut out);
    out
}

pub(crate) fn vertex_list(f: &[usize]) -> String {
    f.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(".")
}

/// The truncated simplex category `Δ≤N`. Objects are `[0]…[N]`; the morphism
/// `f: [m] → [n]` is named `m>n:f(0).f(1)…`.
#[derive(Clone, Debug)]
pub struct SimplexCategory {
    dim: usize,
    category: Arc<FiniteCategory>,
    opposite: Arc<FiniteCategory>,
    maps: Vec<Vec<usize>>,
    lookup: HashMap<(usize, Vec<usize>), usize>,
}

impl SimplexCategory {
    pub fn new(dim: usize) -> Self {
        let objects = (0..=dim).map(|k| format!("[{k}]")).collect();
        let mut maps = Vec::new();
        let mut mors = Vec::new();
        let mut lookup = HashMap::new();
        for m in 0..=dim {
            for n in 0..=dim {
                for f in monotone_maps(m, n) {
                    lookup.insert((n, f.clone()), maps.len());
                    mors.push((format!("{m}>{n}:{}", vertex_list(&f)), m, n));
                    maps.push(f);
                }
            }
        }
        let ids = (0..=dim).map(|k| lookup[&(k, (0..=k).collect::<Vec<_>>())]).collect();
        let tgts: Vec<usize> = mors.iter().map(|m| m.2).collect();
        let category = FiniteCategory::new(objects, mors, ids, |g, f| {
            let comp: Vec<usize> = maps[f].iter().map(|&k| maps[g][k]).collect();
            lookup.get(&(tgts[g], comp)).copied()
        })
        .expect("simplex category");
        let opposite = Arc::new(opposite(&category));
        SimplexCategory { dim, category: Arc::new(category), opposite, maps, lookup }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.category
    }

    /// `Δ≤N^op`, the shape of truncated simplicial sets. Morphism indices agree
    /// with those of `Δ≤N`.
    pub fn opposite(&self) -> &Arc<FiniteCategory> {
        &self.opposite
    }

    /// The function underlying morphism `m`.
    pub fn function(&self, m: usize) -> &[usize] {
        &self.maps[m]
    }

    pub fn index(&self, target: usize, f: &[usize]) -> Option<usize> {
        self.lookup.get(&(target, f.to_vec())).copied()
    }

    pub fn is_surjection(&self, m: usize) -> bool {
        let n = self.category.tgt(m);
        let f = &self.maps[m];
        (0..=n).all(|v| f.contains(&v))
    }

    /// `Δ^n` truncated at this dimension: `k`-simplices are the monotone maps
    /// `[k] → [n]`, named by their vertex lists.
    pub fn standard_simplex(&self, n: usize) -> SetDiagram {
        let levels: Vec<Vec<Vec<usize>>> = (0..=self.dim).map(|k| monotone_maps(k, n)).collect();
        let sets = levels.iter().map(|l| l.iter().map(|f| vertex_list(f)).collect()).collect();
        let index: Vec<HashMap<&Vec<usize>, usize>> =
            levels.iter().map(|l| l.iter().enumerate().map(|(i, f)| (f, i)).collect()).collect();
        let maps = (0..self.maps.len())
            .map(|m| {
                // Δ-morphism α: [j] → [k] acts X_k → X_j by x ↦ x∘α
                let (j, k) = (self.category.src(m), self.category.tgt(m));
                let alpha = &self.maps[m];
                levels[k]
                    .iter()
                    .map(|x| {
                        let y: Vec<usize> = alpha.iter().map(|&i| x[i]).collect();
                        index[j][&y]
                    })
                    .collect()
            })
            .collect();
        SetDiagram::new_unchecked(self.opposite.clone(), sets, maps).expect("standard simplex")
    }

    /// `∂Δ^n ⊂ Δ^n`: the non-surjective simplices.
    pub fn boundary_inclusion(&self, n: usize) -> DiagramMap {
        let full = self.standard_simplex(n);
        let keep: Vec<Vec<bool>> =
            (0..=self.dim).map(|k| monotone_maps(k, n).iter().map(|f| (0..=n).any(|v| !f.contains(&v))).collect()).collect();
        full.subdiagram(&keep).expect("boundary is a subcomplex").1
    }

    /// The unique map `Δ^n → Δ^0`.
    pub fn simplex_to_point(&self, n: usize) -> DiagramMap {
        let src = Arc::new(self.standard_simplex(n));
        let pt = Arc::new(self.standard_simplex(0));
        let components = (0..=self.dim).map(|k| vec![0; src.size(k)]).collect();
        DiagramMap::new_unchecked(src, pt, components).expect("map to a point")
    }

    /// Whether the `k`-simplex `x` of `s` is a degeneracy of a lower simplex.
    pub fn is_degenerate(&self, s: &SetDiagram, k: usize, x: usize) -> bool {
        (0..self.maps.len()).any(|m| {
            self.category.tgt(m) < k && self.category.src(m) == k && self.is_surjection(m) && {
                let low = self.category.tgt(m);
                (0..s.size(low)).any(|z| s.apply(m, z) == x)
            }
        })
    }
}

pub fn boundary_inclusion(n: usize, dim: usize) -> DiagramMap {
    SimplexCategory::new(dim).boundary_inclusion(n)
}

pub fn simplex_to_point(n: usize, dim: usize) -> DiagramMap {
    SimplexCategory::new(dim).simplex_to_point(n)
}

/// Checks that `x` is a diagram over `Δ≤N^op`.
pub fn check_simplicial(delta: &SimplexCategory, x: &SetDiagram) -> Result<()> {
    if x.shape() != delta.opposite() {
        return Err(Error::invalid("simplicial set", "not a diagram over the truncated simplex category"));
    }
    match x.violations().into_iter().next() {
        Some(v) => Err(Error::invalid("simplicial set", v)),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn hom_counts_are_binomial() {
        let d = SimplexCategory::new(3);
        assert!(d.category().is_valid());
        for m in 0..=3 {
            for n in 0..=3 {
                assert_eq!(d.category().hom(m, n).len(), binom(m + n + 1, m + 1));
            }
        }
    }

    #[test]
    fn simplices_and_boundaries() {
        let d = SimplexCategory::new(2);
        let s = d.standard_simplex(2);
        assert!(s.violations().is_empty());
        assert_eq!((0..3).map(|k| s.size(k)).collect::<Vec<_>>(), vec![3, 6, 10]);
        let b = d.boundary_inclusion(2);
        assert_eq!((0..3).map(|k| b.source().size(k)).collect::<Vec<_>>(), vec![3, 6, 9]);
        assert!(b.is_injective());
        let e = d.boundary_inclusion(0);
        assert_eq!(e.source().total_size(), 0);
    }

    #[test]
    fn degeneracy_detection() {
        let d = SimplexCategory::new(2);
        let s = d.standard_simplex(1);
        let deg: Vec<bool> = (0..s.size(1)).map(|x| d.is_degenerate(&s, 1, x)).collect();
        // 0.0, 0.1, 1.1
        assert_eq!(deg, vec![true, false, true]);
    }
}

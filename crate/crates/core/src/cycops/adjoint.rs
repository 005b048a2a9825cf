use serde::Serialize;

use super::operad::{Sym, TruncatedCyclicOperad, TruncatedOperad};
use crate::error::{Error, Result};

/// Largest `|R P(n)|` that [`right_adjoint_r`] will tabulate.
const MAX_R_SIZE: usize = 1 << 20;

/// `σ_i ∈ Σ_n` and the index `n+1 - σ(n+1-i)` (mod `n+1`) for `σ ∈ Σ_{n+1}`,
/// where `σ_i(k) = σ(k-i) - σ(n+1-i)` modulo `n+1`. The result is returned as
/// a 0-based permutation of `{1..n}`.
pub fn sigma_i(sigma: &[usize], i: usize) -> Result<(Vec<usize>, usize)> {
    let n1 = sigma.len();
    let n = n1 - 1;
    let shift = sigma[(n1 - i % n1) % n1];
    let mut out = Vec::with_capacity(n);
    let mut seen = vec![false; n1];
    for k in 1..=n {
        let v = (sigma[(k + n1 - i % n1) % n1] + n1 - shift) % n1;
        if v == 0 || seen[v] {
            return Err(Error::invalid(
                "extended action",
                format!("σ_i(k) = {v} is not in {{1..{n}}} for σ = {sigma:?}, i = {i}, k = {k}"),
            ));
        }
        seen[v] = true;
        out.push(v - 1);
    }
    Ok((out, (n1 - shift) % n1))
}

fn decode(mut v: usize, base: usize, len: usize) -> Vec<usize> {
    (0..len)
        .map(|_| {
            let d = v % base;
            v /= base;
            d
        })
        .collect()
}

fn encode(ds: &[usize], base: usize) -> usize {
    ds.iter().rev().fold(0, |acc, &d| acc * base + d)
}

/// `R P(n) = ∏_{j=0}^{n} P(n)`, element `(x_0, .., x_n)` stored with index
/// `Σ x_j |P(n)|^j`. Composition is
///
/// * `π_j(x ∘_i y) = x_j ∘_{i+j} y_0` for `0 ≤ j ≤ m-i`,
/// * `y_{i+j-m} ∘_{i+j-m} x_{m+1-i}` for `m-i < j ≤ m+n-i`,
/// * `x_{j-n+1} ∘_{i+j-m-n} y_0` for `m+n-i < j < m+n`,
///
/// the action is `π_i(x·σ) = x_{n+1-σ(n+1-i)}·σ_i`, and the unit is `(e, e)`.
pub fn right_adjoint_r(p: &TruncatedOperad) -> Result<TruncatedCyclicOperad> {
    let b = p.bound();
    let mut elements = Vec::with_capacity(b + 1);
    for n in 0..=b {
        let s = p.size(n);
        let count = (0..=n).try_fold(1usize, |acc, _| acc.checked_mul(s).filter(|&c| c <= MAX_R_SIZE));
        let Some(count) = count else {
            return Err(Error::Budget { what: "R P", limit: MAX_R_SIZE });
        };
        elements.push(
            (0..count)
                .map(|v| {
                    let xs = decode(v, s, n + 1);
                    format!("({})", xs.iter().map(|&x| p.name(n, x)).collect::<Vec<_>>().join(","))
                })
                .collect::<Vec<_>>(),
        );
    }
    // every σ_i is computed up front so that a failure surfaces as an error
    let sym = Sym::new(b + 1);
    let mut twists: Vec<Vec<Vec<(usize, usize)>>> = Vec::with_capacity(b + 1);
    for n in 0..=b {
        let mut per_sigma = Vec::new();
        for s in sym.perms(n + 1) {
            let mut row = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let (si, src) = sigma_i(s, i)?;
                row.push((sym.index(&si), src));
            }
            per_sigma.push(row);
        }
        twists.push(per_sigma);
    }
    let act_ext = |n: usize, s: &[usize], v: usize| {
        let base = p.size(n);
        let xs = decode(v, base, n + 1);
        let row = &twists[n][sym.index(s)];
        let out: Vec<usize> = (0..=n).map(|i| p.act(n, row[i].0, xs[row[i].1])).collect();
        encode(&out, base)
    };
    let unit = encode(&[p.unit(), p.unit()], p.size(1));
    let operad = TruncatedOperad::from_fns(
        b,
        elements,
        unit,
        |m, n, i, xv, yv| {
            let (x, y) = (decode(xv, p.size(m), m + 1), decode(yv, p.size(n), n + 1));
            let out: Vec<usize> = (0..m + n)
                .map(|j| {
                    if j <= m - i {
                        p.comp(m, n, i + j, x[j], y[0])
                    } else if j <= m + n - i {
                        p.comp(n, m, i + j - m, y[i + j - m], x[m + 1 - i])
                    } else {
                        p.comp(m, n, i + j - m - n, x[j + 1 - n], y[0])
                    }
                })
                .collect();
            encode(&out, p.size(m + n - 1))
        },
        |n, s, v| act_ext(n, &Sym::extend(s), v),
    )?;
    TruncatedCyclicOperad::from_fn(operad, act_ext)
}

/// Arity-wise maps `h_n: Q(n) → P(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OperadMap {
    pub components: Vec<Vec<usize>>,
}

struct MapSearch<'a> {
    src: &'a TruncatedOperad,
    tgt: &'a TruncatedOperad,
    /// Group actions used for equivariance: `(len, src action, tgt action)` per arity.
    groups: Vec<(usize, Box<dyn Fn(usize, usize) -> usize + 'a>, Box<dyn Fn(usize, usize) -> usize + 'a>)>,
    budget: usize,
    nodes: usize,
    current: Vec<Vec<Option<usize>>>,
    found: Vec<OperadMap>,
}

impl<'a> MapSearch<'a> {
    fn new(
        src: &'a TruncatedOperad,
        tgt: &'a TruncatedOperad,
        ext: Option<(&'a TruncatedCyclicOperad, &'a TruncatedCyclicOperad)>,
        budget: usize,
    ) -> Self {
        let groups = (0..=src.bound())
            .map(|n| match ext {
                Some((qs, qt)) => (
                    src.sym().perms(n + 1).len(),
                    Box::new(move |g, x| qs.ext_act(n, g, x)) as Box<dyn Fn(usize, usize) -> usize>,
                    Box::new(move |g, y| qt.ext_act(n, g, y)) as Box<dyn Fn(usize, usize) -> usize>,
                ),
                None => (
                    src.sym().perms(n).len(),
                    Box::new(move |g, x| src.act(n, g, x)) as Box<dyn Fn(usize, usize) -> usize>,
                    Box::new(move |g, y| tgt.act(n, g, y)) as Box<dyn Fn(usize, usize) -> usize>,
                ),
            })
            .collect();
        let current = (0..=src.bound()).map(|n| vec![None; src.size(n)]).collect();
        MapSearch { src, tgt, groups, budget, nodes: 0, current, found: Vec::new() }
    }

    fn orbit_reps(&self, n: usize) -> Vec<usize> {
        let (len, act, _) = &self.groups[n];
        let mut seen = vec![false; self.src.size(n)];
        let mut reps = Vec::new();
        for x in 0..self.src.size(n) {
            if !seen[x] {
                reps.push(x);
                for g in 0..*len {
                    seen[act(g, x)] = true;
                }
            }
        }
        reps
    }

    fn arity_consistent(&self, n: usize) -> bool {
        let h = |a: usize, x: usize| self.current[a][x].expect("assigned");
        if n == 1 && h(1, self.src.unit()) != self.tgt.unit() {
            return false;
        }
        for m in 1..=n {
            for k in 0..=n {
                if !self.src.has_comp(m, k) || m.max(k).max(m + k - 1) != n {
                    continue;
                }
                for i in 1..=m {
                    for x in 0..self.src.size(m) {
                        for y in 0..self.src.size(k) {
                            let lhs = h(m + k - 1, self.src.comp(m, k, i, x, y));
                            if lhs != self.tgt.comp(m, k, i, h(m, x), h(k, y)) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn arity(&mut self, n: usize) -> Result<()> {
        if n > self.src.bound() {
            let components = self.current.iter().map(|c| c.iter().map(|v| v.unwrap()).collect()).collect();
            self.found.push(OperadMap { components });
            return Ok(());
        }
        let reps = self.orbit_reps(n);
        self.assign(n, &reps, 0)
    }

    fn assign(&mut self, n: usize, reps: &[usize], r: usize) -> Result<()> {
        if r == reps.len() {
            if self.arity_consistent(n) {
                self.arity(n + 1)?;
            }
            return Ok(());
        }
        let x = reps[r];
        for y in 0..self.tgt.size(n) {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::Budget { what: "operad map search", limit: self.budget });
            }
            let mut ok = true;
            let mut touched = Vec::new();
            let len = self.groups[n].0;
            for g in 0..len {
                let (xs, ys) = ((self.groups[n].1)(g, x), (self.groups[n].2)(g, y));
                match self.current[n][xs] {
                    Some(v) if v != ys => {
                        ok = false;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        self.current[n][xs] = Some(ys);
                        touched.push(xs);
                    }
                }
            }
            if ok {
                self.assign(n, reps, r + 1)?;
            }
            for t in touched {
                self.current[n][t] = None;
            }
        }
        Ok(())
    }
}

fn check_bounds(a: &TruncatedOperad, b: &TruncatedOperad) -> Result<()> {
    if a.bound() != b.bound() {
        return Err(Error::invalid("operad map", "source and target have different arity bounds"));
    }
    Ok(())
}

/// Every map of operads `src → tgt` within the common arity bound.
pub fn operad_maps(src: &TruncatedOperad, tgt: &TruncatedOperad, budget: usize) -> Result<Vec<OperadMap>> {
    check_bounds(src, tgt)?;
    let mut s = MapSearch::new(src, tgt, None, budget);
    s.arity(0)?;
    Ok(s.found)
}

/// Every map of cyclic operads `src → tgt`.
pub fn cyclic_maps(src: &TruncatedCyclicOperad, tgt: &TruncatedCyclicOperad, budget: usize) -> Result<Vec<OperadMap>> {
    check_bounds(src.operad(), tgt.operad())?;
    let mut s = MapSearch::new(src.operad(), tgt.operad(), Some((src, tgt)), budget);
    s.arity(0)?;
    Ok(s.found)
}

fn is_map(
    src: &TruncatedOperad,
    tgt: &TruncatedOperad,
    ext: Option<(&TruncatedCyclicOperad, &TruncatedCyclicOperad)>,
    h: &OperadMap,
) -> bool {
    let b = src.bound();
    if h.components.len() != b + 1 || (0..=b).any(|n| h.components[n].len() != src.size(n)) {
        return false;
    }
    let mut s = MapSearch::new(src, tgt, ext, 0);
    for n in 0..=b {
        let (len, sa, ta) = &s.groups[n];
        for g in 0..*len {
            for x in 0..src.size(n) {
                if h.components[n][sa(g, x)] != ta(g, h.components[n][x]) {
                    return false;
                }
            }
        }
    }
    s.current = h.components.iter().map(|c| c.iter().map(|&v| Some(v)).collect()).collect();
    (0..=b).all(|n| s.arity_consistent(n))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjunctionCount {
    /// `|Op(F Q, P)|`.
    pub operad_maps: usize,
    /// `|CycOp(Q, R P)|`.
    pub cyclic_maps: usize,
    pub counts_agree: bool,
    /// `h ↦ π_0 ∘ h` is a bijection between the two sets.
    pub pi0_bijective: bool,
    /// `f ↦ (q ↦ (f(q·τ^{-j}))_j)` lands in cyclic maps and inverts `π_0 ∘ -`.
    pub transpose_inverts: bool,
}

/// `q·τ^{-j}` as a permutation of `{0..n}`.
fn rotate_back(n: usize, j: usize) -> Vec<usize> {
    (0..=n).map(|k| (k + n + 1 - j % (n + 1)) % (n + 1)).collect()
}

/// Counts both sides of `Op(F Q, P) ≅ CycOp(Q, R P)` and checks the
/// comparison maps in both directions.
pub fn check_adjunction_count(q: &TruncatedCyclicOperad, p: &TruncatedOperad, budget: usize) -> Result<AdjunctionCount> {
    let rp = right_adjoint_r(p)?;
    let ops = operad_maps(q.operad(), p, budget)?;
    let cycs = cyclic_maps(q, &rp, budget)?;
    let b = p.bound();
    let pi0 = |h: &OperadMap| OperadMap {
        components: (0..=b).map(|n| h.components[n].iter().map(|&v| v % p.size(n).max(1)).collect()).collect(),
    };
    let images: Vec<OperadMap> = cycs.iter().map(pi0).collect();
    let distinct = images.iter().enumerate().all(|(k, f)| !images[..k].contains(f));
    let pi0_bijective = images.len() == ops.len() && distinct && images.iter().all(|f| ops.contains(f));

    let qo = q.operad();
    let mut transpose_inverts = true;
    for f in &ops {
        let components = (0..=b)
            .map(|n| {
                (0..qo.size(n))
                    .map(|x| {
                        let xs: Vec<usize> = (0..=n).map(|j| f.components[n][q.ext_act_perm(n, &rotate_back(n, j), x)]).collect();
                        encode(&xs, p.size(n))
                    })
                    .collect()
            })
            .collect();
        let sharp = OperadMap { components };
        if !is_map(qo, rp.operad(), Some((q, &rp)), &sharp) || pi0(&sharp) != *f {
            transpose_inverts = false;
        }
    }
    Ok(AdjunctionCount {
        operad_maps: ops.len(),
        cyclic_maps: cycs.len(),
        counts_agree: ops.len() == cycs.len(),
        pi0_bijective,
        transpose_inverts,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrReport {
    pub is_operad_map: bool,
    /// `R f`, obtained as the transpose of `f ∘ π_0`, is `∏_{j ≤ n} f(n)` in every arity.
    pub product_form: bool,
    pub cyclic_map: bool,
    pub f_surjective: Vec<bool>,
    pub rf_surjective: Vec<bool>,
    pub f_injective: Vec<bool>,
    pub rf_injective: Vec<bool>,
    /// Arity-wise surjectivity and injectivity of `f` carry over to `R f`.
    pub preserved: bool,
}

fn surjective(h: &[usize], size: usize) -> bool {
    let mut hit = vec![false; size];
    h.iter().for_each(|&v| hit[v] = true);
    hit.into_iter().all(|x| x)
}

fn injective(h: &[usize]) -> bool {
    let mut s = h.to_vec();
    s.sort_unstable();
    s.windows(2).all(|w| w[0] != w[1])
}

/// Computes `F R f` for an operad map `f: P → P'` and compares it with the
/// arity-wise product of copies of `f`.
pub fn check_fr_products(f: &OperadMap, p: &TruncatedOperad, p2: &TruncatedOperad) -> Result<FrReport> {
    check_bounds(p, p2)?;
    let b = p.bound();
    let is_operad_map = is_map(p, p2, None, f);
    let (rp, rp2) = (right_adjoint_r(p)?, right_adjoint_r(p2)?);
    let mut product_form = true;
    let mut components = Vec::with_capacity(b + 1);
    for n in 0..=b {
        let (s, s2) = (p.size(n), p2.size(n));
        let comp: Vec<usize> = (0..rp.operad().size(n))
            .map(|v| {
                let transposed: Vec<usize> =
                    (0..=n).map(|j| f.components[n][rp.ext_act_perm(n, &rotate_back(n, j), v) % s.max(1)]).collect();
                let product: Vec<usize> = decode(v, s, n + 1).iter().map(|&x| f.components[n][x]).collect();
                product_form &= transposed == product;
                encode(&transposed, s2)
            })
            .collect();
        components.push(comp);
    }
    let rf = OperadMap { components };
    let cyclic_map = is_map(rp.operad(), rp2.operad(), Some((&rp, &rp2)), &rf);
    let f_surjective: Vec<bool> = (0..=b).map(|n| surjective(&f.components[n], p2.size(n))).collect();
    let rf_surjective: Vec<bool> = (0..=b).map(|n| surjective(&rf.components[n], rp2.operad().size(n))).collect();
    let f_injective: Vec<bool> = (0..=b).map(|n| injective(&f.components[n])).collect();
    let rf_injective: Vec<bool> = (0..=b).map(|n| injective(&rf.components[n])).collect();
    let preserved = (0..=b).all(|n| (!f_surjective[n] || rf_surjective[n]) && (!f_injective[n] || rf_injective[n]));
    Ok(FrReport { is_operad_map, product_form, cyclic_map, f_surjective, rf_surjective, f_injective, rf_injective, preserved })
}

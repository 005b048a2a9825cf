use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fincat::all_permutations;

/// The symmetric groups `Σ_0 .. Σ_max` as 0-based permutation lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sym {
    perms: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl Sym {
    pub fn new(max: usize) -> Self {
        let perms: Vec<_> = (0..=max).map(all_permutations).collect();
        let index = perms.iter().map(|ps| ps.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect()).collect();
        Sym { perms, index }
    }

    pub fn max(&self) -> usize {
        self.perms.len() - 1
    }

    pub fn perms(&self, n: usize) -> &[Vec<usize>] {
        &self.perms[n]
    }

    pub fn index(&self, p: &[usize]) -> usize {
        self.index[p.len()][p]
    }

    /// `(a ∘ b)(k) = a(b(k))`.
    pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
        b.iter().map(|&k| a[k]).collect()
    }

    pub fn inverse(a: &[usize]) -> Vec<usize> {
        let mut out = vec![0; a.len()];
        for (k, &v) in a.iter().enumerate() {
            out[v] = k;
        }
        out
    }

    /// The rotation `k ↦ k + 1 mod (n+1)` of `{0..n}`.
    pub fn rotation(n: usize) -> Vec<usize> {
        (0..=n).map(|k| (k + 1) % (n + 1)).collect()
    }

    /// `Σ_n ⊂ Σ_{n+1}` as the stabilizer of `0`.
    pub fn extend(s: &[usize]) -> Vec<usize> {
        std::iter::once(0).chain(s.iter().map(|&v| v + 1)).collect()
    }
}

/// A bijection of `{0..n}`, an element of `Σ_{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtendedPermutation {
    map: Vec<usize>,
}

impl ExtendedPermutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; map.len()];
        for &v in &map {
            if v >= map.len() || std::mem::replace(&mut seen[v], true) {
                return Err(Error::invalid(
                    "extended permutation",
                    format!("{map:?} is not a bijection of {{0..{}}}", map.len().saturating_sub(1)),
                ));
            }
        }
        if map.is_empty() {
            return Err(Error::invalid("extended permutation", "Σ_{n+1} needs n ≥ 0"));
        }
        Ok(ExtendedPermutation { map })
    }

    pub fn n(&self) -> usize {
        self.map.len() - 1
    }

    pub fn apply(&self, k: usize) -> usize {
        self.map[k]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }
}

/// The block permutation `σ ∘_i id_n` in `Σ_{m+n-1}`, for `σ ∈ Σ_m`.
pub(crate) fn block_permutation(s: &[usize], i: usize, n: usize) -> Vec<usize> {
    let m = s.len();
    let si = s[i - 1] + 1;
    let tstart = |j: usize| if j <= si { j } else { j + n - 1 };
    (1..m + n)
        .map(|t| {
            let (g, o) = if t < i {
                (t, 0)
            } else if t < i + n {
                (i, t - i)
            } else {
                (t + 1 - n, 0)
            };
            tstart(s[g - 1] + 1) + o - 1
        })
        .collect()
}

/// `id_m ∘_i τ` in `Σ_{m+n-1}`, for `τ ∈ Σ_n`.
pub(crate) fn inner_permutation(m: usize, i: usize, t: &[usize]) -> Vec<usize> {
    let n = t.len();
    (0..m + n - 1).map(|k| if k + 1 >= i && k + 1 < i + n { i - 1 + t[k + 1 - i] } else { k }).collect()
}

/// A symmetric operad in sets, known up to arity `bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedOperad {
    bound: usize,
    elements: Vec<Vec<String>>,
    unit: usize,
    /// `(m, n) ↦` table indexed by `((i-1)·|P(m)| + p)·|P(n)| + q`.
    comp: BTreeMap<(usize, usize), Vec<usize>>,
    /// `action[n][σ][p] = p·σ`.
    action: Vec<Vec<Vec<usize>>>,
    sym: Arc<Sym>,
}

fn comp_keys(bound: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=bound).flat_map(move |m| (0..=bound).filter(move |&n| m + n - 1 <= bound).map(move |n| (m, n)))
}

impl TruncatedOperad {
    /// Tabulates `∘_i` and the action from closures. Only shapes and ranges
    /// are checked here; see [`validate_operad`] for the axioms.
    pub fn from_fns(
        bound: usize,
        elements: Vec<Vec<String>>,
        unit: usize,
        comp: impl Fn(usize, usize, usize, usize, usize) -> usize,
        act: impl Fn(usize, &[usize], usize) -> usize,
    ) -> Result<Self> {
        let sym = Arc::new(Sym::new(bound + 1));
        if elements.len() != bound + 1 {
            return Err(Error::malformed("operad", format!("expected element lists for arities 0..={bound}")));
        }
        let size = |n: usize| elements[n].len();
        let mut tables = BTreeMap::new();
        for (m, n) in comp_keys(bound) {
            let mut t = Vec::with_capacity(m * size(m) * size(n));
            for i in 1..=m {
                for p in 0..size(m) {
                    for q in 0..size(n) {
                        t.push(comp(m, n, i, p, q));
                    }
                }
            }
            tables.insert((m, n), t);
        }
        let action =
            (0..=bound).map(|n| sym.perms(n).iter().map(|s| (0..size(n)).map(|p| act(n, s, p)).collect()).collect()).collect();
        Self::from_tables(bound, elements, unit, tables, action)
    }

    pub fn from_tables(
        bound: usize,
        elements: Vec<Vec<String>>,
        unit: usize,
        comp: BTreeMap<(usize, usize), Vec<usize>>,
        action: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let sym = Arc::new(Sym::new(bound + 1));
        let bad = |d: String| Err(Error::malformed("operad", d));
        if elements.len() != bound + 1 || action.len() != bound + 1 {
            return bad(format!("expected data for arities 0..={bound}"));
        }
        if bound == 0 || unit >= elements[1].len() {
            return bad("the unit must be an element of arity 1".into());
        }
        let size = |n: usize| elements[n].len();
        for (m, n) in comp_keys(bound) {
            let Some(t) = comp.get(&(m, n)) else {
                return bad(format!("missing composition table for arities ({m}, {n})"));
            };
            if t.len() != m * size(m) * size(n) || t.iter().any(|&r| r >= size(m + n - 1)) {
                return bad(format!("composition table ({m}, {n}) has the wrong shape"));
            }
        }
        for n in 0..=bound {
            if action[n].len() != sym.perms(n).len()
                || action[n].iter().any(|row| row.len() != size(n) || row.iter().any(|&r| r >= size(n)))
            {
                return bad(format!("action table in arity {n} has the wrong shape"));
            }
        }
        Ok(TruncatedOperad { bound, elements, unit, comp, action, sym })
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn size(&self, n: usize) -> usize {
        self.elements[n].len()
    }

    pub fn elements(&self, n: usize) -> &[String] {
        &self.elements[n]
    }

    pub fn name(&self, n: usize, p: usize) -> &str {
        &self.elements[n][p]
    }

    pub fn element_index(&self, n: usize, name: &str) -> Option<usize> {
        self.elements.get(n)?.iter().position(|e| e == name)
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn sym(&self) -> &Sym {
        &self.sym
    }

    pub fn comp_tables(&self) -> &BTreeMap<(usize, usize), Vec<usize>> {
        &self.comp
    }

    pub fn action_tables(&self) -> &[Vec<Vec<usize>>] {
        &self.action
    }

    /// Whether `∘_i: P(m) × P(n) → P(m+n-1)` lies within the bound.
    pub fn has_comp(&self, m: usize, n: usize) -> bool {
        m >= 1 && m <= self.bound && n <= self.bound && m + n - 1 <= self.bound
    }

    /// `p ∘_i q` with `i` 1-based.
    pub fn comp(&self, m: usize, n: usize, i: usize, p: usize, q: usize) -> usize {
        let (sm, sn) = (self.size(m), self.size(n));
        self.comp[&(m, n)][((i - 1) * sm + p) * sn + q]
    }

    /// `p·σ` for the `σ`-th permutation of `Σ_n`.
    pub fn act(&self, n: usize, sigma: usize, p: usize) -> usize {
        self.action[n][sigma][p]
    }

    pub fn act_perm(&self, n: usize, s: &[usize], p: usize) -> usize {
        self.action[n][self.sym.index(s)][p]
    }
}

/// A cyclic operad: an operad whose `Σ_n` actions extend to `Σ_{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedCyclicOperad {
    operad: TruncatedOperad,
    /// `ext[n][σ][p] = p·σ` for `σ ∈ Σ_{n+1}` acting on `{0..n}`.
    ext: Vec<Vec<Vec<usize>>>,
}

impl TruncatedCyclicOperad {
    pub fn new(operad: TruncatedOperad, ext: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let bound = operad.bound;
        if ext.len() != bound + 1 {
            return Err(Error::malformed("cyclic operad", format!("expected actions for arities 0..={bound}")));
        }
        for n in 0..=bound {
            let ok = ext[n].len() == operad.sym.perms(n + 1).len()
                && ext[n].iter().all(|row| row.len() == operad.size(n) && row.iter().all(|&r| r < operad.size(n)));
            if !ok {
                return Err(Error::malformed("cyclic operad", format!("extended action in arity {n} has the wrong shape")));
            }
        }
        Ok(TruncatedCyclicOperad { operad, ext })
    }

    pub fn from_fn(operad: TruncatedOperad, act: impl Fn(usize, &[usize], usize) -> usize) -> Result<Self> {
        let ext = (0..=operad.bound)
            .map(|n| operad.sym.perms(n + 1).iter().map(|s| (0..operad.size(n)).map(|p| act(n, s, p)).collect()).collect())
            .collect();
        Self::new(operad, ext)
    }

    pub fn operad(&self) -> &TruncatedOperad {
        &self.operad
    }

    pub fn ext_tables(&self) -> &[Vec<Vec<usize>>] {
        &self.ext
    }

    /// `p·σ` for the `σ`-th permutation of `Σ_{n+1}`.
    pub fn ext_act(&self, n: usize, sigma: usize, p: usize) -> usize {
        self.ext[n][sigma][p]
    }

    pub fn ext_act_perm(&self, n: usize, s: &[usize], p: usize) -> usize {
        self.ext[n][self.operad.sym.index(s)][p]
    }
}

pub fn forget_cyclic(q: &TruncatedCyclicOperad) -> TruncatedOperad {
    q.operad.clone()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub valid: bool,
    pub arity_bound: usize,
    pub checks: usize,
    pub violation_count: usize,
    /// The first few violations, each naming the axiom and a witness.
    pub violations: Vec<String>,
}

const KEPT_VIOLATIONS: usize = 12;

struct Tally {
    checks: usize,
    count: usize,
    kept: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { checks: 0, count: 0, kept: Vec::new() }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.count += 1;
            if self.kept.len() < KEPT_VIOLATIONS {
                self.kept.push(msg());
            }
        }
    }

    fn report(self, bound: usize) -> AxiomReport {
        AxiomReport {
            valid: self.count == 0,
            arity_bound: bound,
            checks: self.checks,
            violation_count: self.count,
            violations: self.kept,
        }
    }
}

fn check_operad(p: &TruncatedOperad, t: &mut Tally) {
    let b = p.bound;
    let sym = &p.sym;
    let nm = |n: usize, x: usize| p.name(n, x).to_string();

    for n in 0..=b {
        let perms = sym.perms(n);
        let id = sym.index(&(0..n).collect::<Vec<_>>());
        for x in 0..p.size(n) {
            t.check(p.act(n, id, x) == x, || format!("action: {}·id ≠ {}", nm(n, x), nm(n, x)));
            for (si, s) in perms.iter().enumerate() {
                for (ri, r) in perms.iter().enumerate() {
                    let lhs = p.act(n, ri, p.act(n, si, x));
                    let rhs = p.act_perm(n, &Sym::compose(s, r), x);
                    t.check(lhs == rhs, || format!("action: ({}·{s:?})·{r:?} ≠ {}·({s:?}∘{r:?})", nm(n, x), nm(n, x)));
                }
            }
        }
    }

    let e = p.unit;
    for n in 0..=b {
        for x in 0..p.size(n) {
            t.check(p.comp(1, n, 1, e, x) == x, || format!("unit: e ∘_1 {} ≠ {}", nm(n, x), nm(n, x)));
            if n >= 1 {
                for i in 1..=n {
                    t.check(p.comp(n, 1, i, x, e) == x, || format!("unit: {} ∘_{i} e ≠ {}", nm(n, x), nm(n, x)));
                }
            }
        }
    }

    // associativity
    for m in 1..=b {
        for n in 0..=b {
            for k in 0..=b {
                let fits = m + n - 1 <= b && (m + n + k).saturating_sub(2) <= b && m + k - 1 <= b && (n == 0 || n + k - 1 <= b);
                if !fits {
                    continue;
                }
                let mn = m + n - 1;
                for i in 1..=m {
                    for j in 1..=mn {
                        for x in 0..p.size(m) {
                            for y in 0..p.size(n) {
                                for z in 0..p.size(k) {
                                    let lhs = p.comp(mn, k, j, p.comp(m, n, i, x, y), z);
                                    let rhs = if j < i {
                                        p.comp(m + k - 1, n, i + k - 1, p.comp(m, k, j, x, z), y)
                                    } else if j < i + n {
                                        p.comp(m, n + k - 1, i, x, p.comp(n, k, j - i + 1, y, z))
                                    } else {
                                        p.comp(m + k - 1, n, i, p.comp(m, k, j + 1 - n, x, z), y)
                                    };
                                    t.check(lhs == rhs, || {
                                        format!(
                                            "associativity: ({} ∘_{i} {}) ∘_{j} {} differs from the rearranged composite",
                                            nm(m, x),
                                            nm(n, y),
                                            nm(k, z)
                                        )
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    // equivariance
    for (m, n) in comp_keys(b) {
        let mn = m + n - 1;
        for i in 1..=m {
            for x in 0..p.size(m) {
                for y in 0..p.size(n) {
                    for (si, s) in sym.perms(m).iter().enumerate() {
                        let lhs = p.comp(m, n, i, p.act(m, si, x), y);
                        let rhs = p.act_perm(mn, &block_permutation(s, i, n), p.comp(m, n, s[i - 1] + 1, x, y));
                        t.check(lhs == rhs, || {
                            format!("equivariance: ({}·{s:?}) ∘_{i} {} ≠ block-permuted composite", nm(m, x), nm(n, y))
                        });
                    }
                    for (ti, tau) in sym.perms(n).iter().enumerate() {
                        let lhs = p.comp(m, n, i, x, p.act(n, ti, y));
                        let rhs = p.act_perm(mn, &inner_permutation(m, i, tau), p.comp(m, n, i, x, y));
                        t.check(lhs == rhs, || {
                            format!("equivariance: {} ∘_{i} ({}·{tau:?}) ≠ inner-permuted composite", nm(m, x), nm(n, y))
                        });
                    }
                }
            }
        }
    }
}

/// Checks every operad axiom whose arities lie within the bound.
pub fn validate_operad(p: &TruncatedOperad) -> AxiomReport {
    let mut t = Tally::new();
    check_operad(p, &mut t);
    t.report(p.bound)
}

/// Checks the operad axioms, that the `Σ_{n+1}` actions are actions
/// restricting to the `Σ_n` ones, `e·τ_1 = e`, and for the rotation `τ`
///
/// * `(p ∘_i q)·τ = (p·τ) ∘_{i-1} q` for `i ≥ 2`,
/// * `(p ∘_1 q)·τ = (q·τ) ∘_n (p·τ)` for `n ≥ 1`.
pub fn validate_cyclic(q: &TruncatedCyclicOperad) -> AxiomReport {
    let p = &q.operad;
    let b = p.bound;
    let sym = &p.sym;
    let mut t = Tally::new();
    check_operad(p, &mut t);
    let nm = |n: usize, x: usize| p.name(n, x).to_string();

    for n in 0..=b {
        let perms = sym.perms(n + 1);
        let id = sym.index(&(0..=n).collect::<Vec<_>>());
        for x in 0..p.size(n) {
            t.check(q.ext_act(n, id, x) == x, || format!("extended action: {}·id ≠ {}", nm(n, x), nm(n, x)));
            for (si, s) in perms.iter().enumerate() {
                for (ri, r) in perms.iter().enumerate() {
                    let lhs = q.ext_act(n, ri, q.ext_act(n, si, x));
                    let rhs = q.ext_act_perm(n, &Sym::compose(s, r), x);
                    t.check(lhs == rhs, || format!("extended action: ({}·{s:?})·{r:?} ≠ {}·({s:?}∘{r:?})", nm(n, x), nm(n, x)));
                }
            }
            for (si, s) in sym.perms(n).iter().enumerate() {
                t.check(q.ext_act_perm(n, &Sym::extend(s), x) == p.act(n, si, x), || {
                    format!("extended action on {} does not restrict to the Σ_{n} action at {s:?}", nm(n, x))
                });
            }
        }
    }

    let e = p.unit;
    t.check(q.ext_act_perm(1, &Sym::rotation(1), e) == e, || "unit: e·τ_1 ≠ e".to_string());

    for (m, n) in comp_keys(b) {
        let mn = m + n - 1;
        let (rm, rn, rmn) = (Sym::rotation(m), Sym::rotation(n), Sym::rotation(mn));
        for x in 0..p.size(m) {
            for y in 0..p.size(n) {
                for i in 2..=m {
                    let lhs = q.ext_act_perm(mn, &rmn, p.comp(m, n, i, x, y));
                    let rhs = p.comp(m, n, i - 1, q.ext_act_perm(m, &rm, x), y);
                    t.check(lhs == rhs, || {
                        format!("cyclic: ({} ∘_{i} {})·τ ≠ ({}·τ) ∘_{} {}", nm(m, x), nm(n, y), nm(m, x), i - 1, nm(n, y))
                    });
                }
                if n >= 1 {
                    let lhs = q.ext_act_perm(mn, &rmn, p.comp(m, n, 1, x, y));
                    let rhs = p.comp(n, m, n, q.ext_act_perm(n, &rn, y), q.ext_act_perm(m, &rm, x));
                    t.check(lhs == rhs, || {
                        format!("cyclic: ({} ∘_1 {})·τ ≠ ({}·τ) ∘_{n} ({}·τ)", nm(m, x), nm(n, y), nm(n, y), nm(m, x))
                    });
                }
            }
        }
    }
    t.report(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_permutations() {
        // swapping two inputs and expanding the first into a block of two
        assert_eq!(block_permutation(&[1, 0], 1, 2), vec![1, 2, 0]);
        assert_eq!(block_permutation(&[1, 0], 2, 2), vec![2, 0, 1]);
        assert_eq!(block_permutation(&[0, 1], 1, 0), vec![0]);
        assert_eq!(inner_permutation(2, 2, &[1, 0]), vec![0, 2, 1]);
    }

    #[test]
    fn sym_helpers() {
        let s = Sym::new(3);
        assert_eq!(s.perms(3).len(), 6);
        assert_eq!(Sym::rotation(2), vec![1, 2, 0]);
        assert_eq!(Sym::inverse(&[1, 2, 0]), vec![2, 0, 1]);
        assert_eq!(Sym::compose(&[1, 2, 0], &[2, 0, 1]), vec![0, 1, 2]);
        assert_eq!(Sym::extend(&[1, 0]), vec![0, 2, 1]);
        assert!(ExtendedPermutation::new(vec![0, 0]).is_err());
        assert_eq!(ExtendedPermutation::new(vec![2, 0, 1]).unwrap().n(), 2);
    }
}

use std::sync::Arc;

use super::category::FiniteCategory;
use crate::error::{Error, Result};

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    elements: Vec<String>,
    // mul[g][h] = g·h
    mul: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from a table, checking the group axioms.
    pub fn new(elements: Vec<String>, mul: Vec<Vec<usize>>) -> Result<Self> {
        let n = elements.len();
        if n == 0 || mul.len() != n || mul.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::malformed("group", "table must be square over the element list"));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mul[e][g] == g && mul[g][e] == g))
            .ok_or_else(|| Error::invalid("group", "no identity element"))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(Error::invalid(
                            "group",
                            format!("({0}{1}){2} ≠ {0}({1}{2})", elements[a], elements[b], elements[c]),
                        ));
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            let inv = (0..n)
                .find(|&h| mul[g][h] == identity && mul[h][g] == identity)
                .ok_or_else(|| Error::invalid("group", format!("`{}` has no inverse", elements[g])))?;
            inverse.push(inv);
        }
        Ok(FiniteGroup { elements, mul, identity, inverse })
    }

    /// Cyclic group of order `n`, elements `e, g, g2, …`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let elements = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g{k}"),
            })
            .collect();
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::new(elements, mul).expect("cyclic group table")
    }

    /// Direct product, elements named `(g,h)`.
    pub fn product(&self, other: &FiniteGroup) -> Self {
        let (n, m) = (self.order(), other.order());
        let mut elements = Vec::with_capacity(n * m);
        for a in 0..n {
            for b in 0..m {
                elements.push(format!("({},{})", self.elements[a], other.elements[b]));
            }
        }
        let mul =
            (0..n * m).map(|x| (0..n * m).map(|y| self.mul[x / m][y / m] * m + other.mul[x % m][y % m]).collect()).collect();
        FiniteGroup::new(elements, mul).expect("product of groups")
    }

    /// Symmetric group on `{0, …, n-1}`; elements are image lists like `1.0.2`,
    /// composed as functions: `(σ·τ)(k) = σ(τ(k))`.
    pub fn symmetric(n: usize) -> Self {
        let perms = all_permutations(n);
        let elements: Vec<String> = perms.iter().map(|p| p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(".")).collect();
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        let mul = perms.iter().map(|s| perms.iter().map(|t| index(&t.iter().map(|&k| s[k]).collect())).collect()).collect();
        FiniteGroup::new(elements, mul).expect("symmetric group table")
    }

    /// Opposite group: `g ·op h = h · g`, same element names.
    pub fn opposite(&self) -> Self {
        let n = self.order();
        let mul = (0..n).map(|a| (0..n).map(|b| self.mul[b][a]).collect()).collect();
        FiniteGroup { elements: self.elements.clone(), mul, identity: self.identity, inverse: self.inverse.clone() }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, g: usize) -> &str {
        &self.elements[g]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.mul[g][h]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    /// The one-object category with the group elements as morphisms.
    pub fn as_category(&self) -> FiniteCategory {
        FiniteCategory::new(
            vec!["*".into()],
            self.elements.iter().map(|e| (e.clone(), 0, 0)).collect(),
            vec![self.identity],
            |g, f| Some(self.mul[g][f]),
        )
        .expect("group category")
    }

    pub fn as_category_arc(&self) -> Arc<FiniteCategory> {
        Arc::new(self.as_category())
    }
}

/// All permutations of `0..n` in lexicographic order of their image lists.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in 0..n {
            if !used[k] {
                used[k] = true;
                cur.push(k);
                rec(n, cur, used, out);
                cur.pop();
                used[k] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_groups_have_expected_orders() {
        assert_eq!(FiniteGroup::cyclic(3).order(), 3);
        assert_eq!(FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(2)).order(), 4);
        assert_eq!(FiniteGroup::symmetric(3).order(), 6);
        assert_eq!(FiniteGroup::symmetric(0).order(), 1);
    }

    #[test]
    fn symmetric_group_is_nonabelian() {
        let s3 = FiniteGroup::symmetric(3);
        let n = s3.order();
        assert!((0..n).any(|a| (0..n).any(|b| s3.mul(a, b) != s3.mul(b, a))));
    }

    #[test]
    fn bad_table_rejected() {
        let r = FiniteGroup::new(vec!["e".into(), "a".into()], vec![vec![0, 1], vec![1, 1]]);
        assert!(r.is_err());
    }

    #[test]
    fn group_category_is_a_groupoid() {
        let c = FiniteGroup::symmetric(3).as_category();
        assert!(c.validate().is_valid());
        assert!(c.is_groupoid());
    }
}

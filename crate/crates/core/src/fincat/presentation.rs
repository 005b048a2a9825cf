//! Bounded completion of a category presented by generators and relations.
//!
//! Words are paths of generators, read in application order (`[f, g]` means
//! `g ∘ f`). All composable words up to a length bound `L` are enumerated and
//! identified by rewriting with the relations inside that window. `L` grows
//! until every word of length `L` equals a shorter one and the partition of the
//! shorter words stops changing between `L` and `L + 1`. This is a heuristic for
//! a problem that is undecidable in general; callers validate the result and
//! the search fails with a budget error once too many words appear.

use std::collections::HashMap;

use petgraph::unionfind::UnionFind;

use super::category::FiniteCategory;
use crate::error::{Error, Result};

/// A relation `lhs = rhs` between parallel words starting at `src`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub src: usize,
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
}

#[derive(Clone, Debug, Default)]
pub struct Presentation {
    pub objects: Vec<String>,
    pub identity_names: Vec<String>,
    /// `(name, src, tgt)`
    pub generators: Vec<(String, usize, usize)>,
    pub relations: Vec<Relation>,
}

struct Window {
    words: Vec<(usize, Vec<usize>)>,
    index: HashMap<(usize, Vec<usize>), usize>,
    uf: UnionFind<usize>,
    // earliest (shortest, then first enumerated) word of each class
    canon: Vec<usize>,
}

impl Window {
    fn settle(&mut self) {
        let mut first: HashMap<usize, usize> = HashMap::new();
        self.canon = (0..self.words.len()).map(|i| *first.entry(self.uf.find_mut(i)).or_insert(i)).collect();
    }

    fn find(&mut self, x: usize) -> usize {
        self.canon[x]
    }
}

impl Presentation {
    pub fn new(objects: Vec<String>, identity_names: Vec<String>) -> Self {
        Presentation { objects, identity_names, generators: Vec::new(), relations: Vec::new() }
    }

    pub fn generator(&mut self, name: impl Into<String>, src: usize, tgt: usize) -> usize {
        self.generators.push((name.into(), src, tgt));
        self.generators.len() - 1
    }

    pub fn relation(&mut self, src: usize, lhs: Vec<usize>, rhs: Vec<usize>) -> Result<()> {
        let end = |w: &[usize]| -> Result<usize> {
            let mut at = src;
            for &x in w {
                let (_, s, t) = self.generators.get(x).ok_or_else(|| Error::unknown("generator", x.to_string()))?;
                if *s != at {
                    return Err(Error::malformed("relation", "word is not composable"));
                }
                at = *t;
            }
            Ok(at)
        };
        if end(&lhs)? != end(&rhs)? {
            return Err(Error::malformed("relation", "sides are not parallel"));
        }
        self.relations.push(Relation { src, lhs, rhs });
        Ok(())
    }

    fn window(&self, len: usize, max_words: usize) -> Result<Window> {
        let mut words: Vec<(usize, Vec<usize>)> = (0..self.objects.len()).map(|o| (o, Vec::new())).collect();
        let mut frontier: Vec<usize> = (0..words.len()).collect();
        for _ in 0..len {
            let mut next = Vec::new();
            for &w in &frontier {
                let (s, ref word) = words[w];
                let at = word.last().map_or(s, |&x| self.generators[x].2);
                for (x, g) in self.generators.iter().enumerate() {
                    if g.1 == at {
                        let mut v = word.clone();
                        v.push(x);
                        next.push((s, v));
                    }
                }
            }
            frontier = (words.len()..words.len() + next.len()).collect();
            words.extend(next);
            if words.len() > max_words {
                return Err(Error::Budget { what: "category closure", limit: max_words });
            }
        }
        let index = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let uf = UnionFind::new(words.len());
        let mut win = Window { words, index, uf, canon: Vec::new() };
        for i in 0..win.words.len() {
            let (s, word) = win.words[i].clone();
            for r in &self.relations {
                for (from, to) in [(&r.lhs, &r.rhs), (&r.rhs, &r.lhs)] {
                    if from.is_empty() {
                        // an empty side matches at every position with the right object
                        for pos in 0..=word.len() {
                            let at = if pos == 0 { s } else { self.generators[word[pos - 1]].2 };
                            if at == r.src {
                                self.try_replace(&mut win, i, s, &word, pos, pos, to);
                            }
                        }
                    } else if from.len() <= word.len() {
                        for pos in 0..=word.len() - from.len() {
                            if word[pos..pos + from.len()] == from[..] {
                                self.try_replace(&mut win, i, s, &word, pos, pos + from.len(), to);
                            }
                        }
                    }
                }
            }
        }
        win.settle();
        Ok(win)
    }

    #[allow(clippy::too_many_arguments)]
    fn try_replace(&self, win: &mut Window, i: usize, s: usize, word: &[usize], a: usize, b: usize, to: &[usize]) {
        let mut v = word[..a].to_vec();
        v.extend_from_slice(to);
        v.extend_from_slice(&word[b..]);
        if let Some(&j) = win.index.get(&(s, v)) {
            win.uf.union(i, j);
        }
    }

    fn partition_below(win: &mut Window, len: usize) -> Vec<usize> {
        let n = win.words.iter().take_while(|w| w.1.len() < len).count();
        (0..n).map(|i| win.find(i)).collect()
    }

    /// Completes the presentation to a finite category, or fails once more
    /// than `max_words` words would be needed.
    pub fn complete(&self, max_words: usize) -> Result<FiniteCategory> {
        Ok(self.complete_mapped(max_words)?.0)
    }

    /// As [`Presentation::complete`], also returning the morphism each
    /// generator becomes.
    pub fn complete_mapped(&self, max_words: usize) -> Result<(FiniteCategory, Vec<usize>)> {
        let min_len = self.relations.iter().map(|r| r.lhs.len().max(r.rhs.len())).max().unwrap_or(0).max(1);
        let mut len = min_len;
        let mut win = self.window(len, max_words)?;
        loop {
            let mut next = self.window(len + 1, max_words)?;
            let top: Vec<usize> = (0..win.words.len()).filter(|&i| win.words[i].1.len() == len).collect();
            let covered = top.into_iter().all(|i| {
                let r = win.find(i);
                win.words[r].1.len() < len
            });
            if covered && Self::partition_below(&mut win, len) == Self::partition_below(&mut next, len) {
                return self.assemble(next, len);
            }
            win = next;
            len += 1;
        }
    }

    fn assemble(&self, mut win: Window, len: usize) -> Result<(FiniteCategory, Vec<usize>)> {
        // classes are the roots among words shorter than `len`; roots are the
        // earliest word of their class, i.e. shortest first
        let mut class_of_root: HashMap<usize, usize> = HashMap::new();
        let mut reps: Vec<usize> = Vec::new();
        for i in 0..win.words.len() {
            if win.words[i].1.len() >= len {
                break;
            }
            let r = win.find(i);
            if r == i {
                class_of_root.insert(r, reps.len());
                reps.push(r);
            }
        }
        let end = |s: usize, w: &[usize]| w.last().map_or(s, |&x| self.generators[x].2);
        let mut names = Vec::with_capacity(reps.len());
        let mut mors = Vec::with_capacity(reps.len());
        for &r in &reps {
            let (s, ref w) = win.words[r];
            let name = match w.len() {
                0 => self.identity_names[s].clone(),
                _ => w.iter().rev().map(|&x| self.generators[x].0.as_str()).collect::<Vec<_>>().join("∘"),
            };
            names.push(name.clone());
            mors.push((name, s, end(s, w)));
        }
        let identities: Vec<usize> =
            (0..self.objects.len()).map(|o| class_of_root[&win.find(win.index[&(o, Vec::new())])]).collect();
        // composite g ∘ f: start at f's representative and append g's letters
        let mut table: HashMap<(usize, usize), usize> = HashMap::new();
        for f in 0..reps.len() {
            for g in 0..reps.len() {
                if mors[g].1 != mors[f].2 {
                    continue;
                }
                let mut cur = f;
                let letters = win.words[reps[g]].1.clone();
                for x in letters {
                    let (s, mut w) = win.words[reps[cur]].clone();
                    w.push(x);
                    let j = win.index[&(s, w)];
                    let root = win.find(j);
                    cur = *class_of_root
                        .get(&root)
                        .ok_or_else(|| Error::Internal("closure window does not cover a composite".into()))?;
                }
                table.insert((g, f), cur);
            }
        }
        let cat = FiniteCategory::new(self.objects.clone(), mors, identities, |g, f| table.get(&(g, f)).copied())?;
        if !cat.is_valid() {
            return Err(Error::invalid("category closure", "completed table violates the category laws"));
        }
        let gens = (0..self.generators.len())
            .map(|x| {
                let j = win.index[&(self.generators[x].1, vec![x])];
                class_of_root[&win.find(j)]
            })
            .collect();
        Ok((cat, gens))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn objs(names: &[&str]) -> (Vec<String>, Vec<String>) {
        (names.iter().map(|s| s.to_string()).collect(), names.iter().map(|s| format!("id_{s}")).collect())
    }

    #[test]
    fn free_path_category() {
        let (o, i) = objs(&["0", "1", "2"]);
        let mut p = Presentation::new(o, i);
        p.generator("f", 0, 1);
        p.generator("g", 1, 2);
        let c = p.complete(1000).unwrap();
        assert_eq!(c.num_morphisms(), 6);
        assert!(c.morphism_index("g∘f").is_some());
    }

    #[test]
    fn idempotent_relation() {
        let (o, i) = objs(&["a"]);
        let mut p = Presentation::new(o, i);
        let e = p.generator("e", 0, 0);
        p.relation(0, vec![e, e], vec![e]).unwrap();
        let c = p.complete(1000).unwrap();
        assert_eq!(c.num_morphisms(), 2);
    }

    #[test]
    fn invertible_generator() {
        let (o, i) = objs(&["a", "b"]);
        let mut p = Presentation::new(o, i);
        let f = p.generator("f", 0, 1);
        let g = p.generator("g", 1, 0);
        p.relation(0, vec![f, g], vec![]).unwrap();
        p.relation(1, vec![g, f], vec![]).unwrap();
        let c = p.complete(1000).unwrap();
        assert_eq!(c.num_morphisms(), 4);
        assert!(c.is_groupoid());
    }

    #[test]
    fn free_loop_exceeds_budget() {
        let (o, i) = objs(&["a"]);
        let mut p = Presentation::new(o, i);
        p.generator("e", 0, 0);
        assert!(matches!(p.complete(50), Err(Error::Budget { .. })));
    }

    #[test]
    fn cyclic_group_of_order_three() {
        let (o, i) = objs(&["*"]);
        let mut p = Presentation::new(o, i);
        let g = p.generator("g", 0, 0);
        p.relation(0, vec![g, g, g], vec![]).unwrap();
        let c = p.complete(1000).unwrap();
        assert_eq!(c.num_morphisms(), 3);
    }
}

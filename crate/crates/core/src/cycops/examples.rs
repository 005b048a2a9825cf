use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use super::operad::{validate_operad, Sym, TruncatedCyclicOperad, TruncatedOperad};
use crate::error::Result;
use crate::fincat::all_permutations;

/// One operation in every arity; with `nullary = false`, `P(0)` is empty.
pub fn terminal(bound: usize, nullary: bool) -> TruncatedOperad {
    let elements = (0..=bound).map(|n| if n == 0 && !nullary { vec![] } else { vec!["*".to_string()] }).collect();
    TruncatedOperad::from_fns(bound, elements, 0, |_, _, _, _, _| 0, |_, _, _| 0).expect("terminal operad")
}

pub fn terminal_cyclic(bound: usize, nullary: bool) -> TruncatedCyclicOperad {
    TruncatedCyclicOperad::from_fn(terminal(bound, nullary), |_, _, _| 0).expect("terminal cyclic operad")
}

fn word_name(w: &[usize]) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.iter().map(|a| format!("x{}", a + 1)).collect()
    }
}

/// `P(n) = Σ_n`, read as the words `x_{a_1}⋯x_{a_n}`; `∘_i` substitutes a
/// word for the letter `x_i`.
pub fn associative(bound: usize) -> TruncatedOperad {
    let words: Vec<Vec<Vec<usize>>> = (0..=bound).map(all_permutations).collect();
    let sym = Sym::new(bound);
    let elements = words.iter().map(|ws| ws.iter().map(|w| word_name(w)).collect()).collect();
    let unit = 0;
    TruncatedOperad::from_fns(
        bound,
        elements,
        unit,
        |m, n, i, p, q| {
            let (w, v) = (&words[m][p], &words[n][q]);
            let i0 = i - 1;
            let mut out = Vec::with_capacity(w.len() + n - 1);
            for &a in w {
                if a == i0 {
                    out.extend(v.iter().map(|&b| b + i0));
                } else if a > i0 {
                    out.push(a + n - 1);
                } else {
                    out.push(a);
                }
            }
            sym.index(&out)
        },
        |n, s, p| {
            let inv = Sym::inverse(s);
            sym.index(&words[n][p].iter().map(|&a| inv[a]).collect::<Vec<_>>())
        },
    )
    .expect("associative operad")
}

/// The associative operad with `Σ_{n+1}` relabelling the cyclic word
/// `x_0 x_{a_1} ⋯ x_{a_n}` read from `x_0`.
pub fn cyclic_associative(bound: usize) -> TruncatedCyclicOperad {
    let p = associative(bound);
    let words: Vec<Vec<Vec<usize>>> = (0..=bound).map(all_permutations).collect();
    let sym = Sym::new(bound);
    TruncatedCyclicOperad::from_fn(p, |n, s, x| {
        let inv = Sym::inverse(s);
        let cyc: Vec<usize> = std::iter::once(0).chain(words[n][x].iter().map(|&a| a + 1)).map(|l| inv[l]).collect();
        let start = cyc.iter().position(|&l| l == 0).unwrap();
        let w: Vec<usize> = (1..=n).map(|k| cyc[(start + k) % (n + 1)] - 1).collect();
        sym.index(&w)
    })
    .expect("cyclic associative operad")
}

/// `End_X(n) = X^(X^n)` for `X = {0..k-1}`, with substitution of functions
/// and `(fσ)(x_1..x_n) = f(x_{σ⁻¹(1)} .. x_{σ⁻¹(n)})`.
pub fn endomorphism(k: usize, bound: usize) -> TruncatedOperad {
    let pow = |b: usize, e: usize| b.pow(e as u32);
    let digits = |mut v: usize, len: usize| {
        (0..len)
            .map(|_| {
                let d = v % k;
                v /= k;
                d
            })
            .collect::<Vec<_>>()
    };
    let encode = |ds: &[usize]| ds.iter().rev().fold(0, |acc, &d| acc * k + d);
    let elements = (0..=bound)
        .map(|n| {
            (0..pow(k, pow(k, n)))
                .map(|f| format!("f{}", digits(f, pow(k, n)).iter().map(|d| d.to_string()).collect::<String>()))
                .collect()
        })
        .collect();
    // identity function in arity 1: table [0, 1, .., k-1]
    let unit = encode(&(0..k).collect::<Vec<_>>());
    TruncatedOperad::from_fns(
        bound,
        elements,
        unit,
        |m, n, i, f, g| {
            let mn = m + n - 1;
            let (ft, gt) = (digits(f, pow(k, m)), digits(g, pow(k, n)));
            let table: Vec<usize> = (0..pow(k, mn))
                .map(|x| {
                    let xs = digits(x, mn);
                    let inner = gt[encode(&xs[i - 1..i - 1 + n])];
                    let mut args = xs[..i - 1].to_vec();
                    args.push(inner);
                    args.extend_from_slice(&xs[i - 1 + n..]);
                    ft[encode(&args)]
                })
                .collect();
            encode(&table)
        },
        |n, s, f| {
            let ft = digits(f, pow(k, n));
            let inv = Sym::inverse(s);
            let table: Vec<usize> = (0..pow(k, n))
                .map(|x| {
                    let xs = digits(x, n);
                    let args: Vec<usize> = (0..n).map(|j| xs[inv[j]]).collect();
                    ft[encode(&args)]
                })
                .collect();
            encode(&table)
        },
    )
    .expect("endomorphism operad")
}

/// Structures on `P(n) = {0, 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TwoElementKind {
    /// `p ∘_i q = p + q + shift`, acting by `p ↦ p + sgn σ` when `sign`.
    Additive {
        shift: bool,
        sign: bool,
    },
    Or,
    And,
}

impl TwoElementKind {
    pub fn all() -> Vec<TwoElementKind> {
        let mut out = Vec::new();
        for shift in [false, true] {
            for sign in [false, true] {
                out.push(TwoElementKind::Additive { shift, sign });
            }
        }
        out.push(TwoElementKind::Or);
        out.push(TwoElementKind::And);
        out
    }
}

fn parity(s: &[usize]) -> usize {
    let mut inv = 0;
    for a in 0..s.len() {
        for b in a + 1..s.len() {
            inv += (s[a] > s[b]) as usize;
        }
    }
    inv % 2
}

fn two_element_ops(kind: TwoElementKind) -> (usize, impl Fn(usize, usize) -> usize, impl Fn(&[usize], usize) -> usize) {
    let (unit, shift) = match kind {
        TwoElementKind::Additive { shift, .. } => (shift as usize, shift as usize),
        TwoElementKind::Or => (0, 0),
        TwoElementKind::And => (1, 0),
    };
    let comp = move |p: usize, q: usize| match kind {
        TwoElementKind::Additive { .. } => (p + q + shift) % 2,
        TwoElementKind::Or => p | q,
        TwoElementKind::And => p & q,
    };
    let act = move |s: &[usize], p: usize| match kind {
        TwoElementKind::Additive { sign: true, .. } => (p + parity(s)) % 2,
        _ => p,
    };
    (unit, comp, act)
}

pub fn two_element(kind: TwoElementKind, bound: usize) -> TruncatedOperad {
    let (unit, comp, act) = two_element_ops(kind);
    let elements = vec![vec!["0".to_string(), "1".to_string()]; bound + 1];
    TruncatedOperad::from_fns(bound, elements, unit, |_, _, _, p, q| comp(p, q), |_, s, p| act(s, p)).expect("two-element operad")
}

/// The same formulas, with `Σ_{n+1}` acting through the same rule.
pub fn two_element_cyclic(kind: TwoElementKind, bound: usize) -> TruncatedCyclicOperad {
    let (_, _, act) = two_element_ops(kind);
    TruncatedCyclicOperad::from_fn(two_element(kind, bound), |_, s, p| act(s, p)).expect("two-element cyclic operad")
}

/// A random valid two-element operad: a random member of the
/// [`TwoElementKind`] family that passes [`validate_operad`], transported
/// along random relabellings of each `P(n)`.
pub fn random_two_element<R: Rng + ?Sized>(rng: &mut R, bound: usize) -> Result<(TwoElementKind, TruncatedOperad)> {
    let valid: Vec<TwoElementKind> =
        TwoElementKind::all().into_iter().filter(|&k| validate_operad(&two_element(k, bound)).valid).collect();
    let kind = *valid.choose(rng).expect("the additive structure without sign is always valid");
    let base = two_element(kind, bound);
    let flip: Vec<usize> = (0..=bound).map(|_| rng.gen_range(0..2)).collect();
    let elements = vec![vec!["a".to_string(), "b".to_string()]; bound + 1];
    let p = TruncatedOperad::from_fns(
        bound,
        elements,
        base.unit() ^ flip[1],
        |m, n, i, p, q| base.comp(m, n, i, p ^ flip[m], q ^ flip[n]) ^ flip[m + n - 1],
        |n, s, p| base.act_perm(n, s, p ^ flip[n]) ^ flip[n],
    )?;
    Ok((kind, p))
}

#[cfg(test)]
mod tests {
    use super::super::operad::validate_cyclic;
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn terminal_and_associative_are_operads() {
        for p in [terminal(3, true), terminal(3, false), associative(3)] {
            let r = validate_operad(&p);
            assert!(r.valid, "{:?}", r.violations);
        }
        assert_eq!(associative(3).size(3), 6);
        assert_eq!(associative(3).name(2, 1), "x2x1");
    }

    #[test]
    fn endomorphism_operad_fixes_the_conventions() {
        let p = endomorphism(2, 3);
        assert_eq!((p.size(0), p.size(1), p.size(2), p.size(3)), (2, 4, 16, 256));
        let r = validate_operad(&p);
        assert!(r.valid, "{:?}", r.violations);
    }

    #[test]
    fn cyclic_examples() {
        for q in [terminal_cyclic(3, true), terminal_cyclic(3, false), cyclic_associative(3)] {
            let r = validate_cyclic(&q);
            assert!(r.valid, "{:?}", r.violations);
        }
    }

    #[test]
    fn broken_tables_are_caught() {
        // the associative operad with the trivial cyclic action is not cyclic
        let q = TruncatedCyclicOperad::from_fn(associative(3), |n, s, p| {
            if s[0] == 0 {
                associative(3).act_perm(n, &s[1..].iter().map(|&v| v - 1).collect::<Vec<_>>(), p)
            } else {
                p
            }
        });
        assert!(!validate_cyclic(&q.unwrap()).valid);
        // ∘_i ignoring its second argument has no unit
        let bad = TruncatedOperad::from_fns(2, vec![vec!["a".into(), "b".into()]; 3], 0, |_, _, _, p, _| p, |_, _, p| p).unwrap();
        assert!(!validate_operad(&bad).valid);
    }

    #[test]
    fn two_element_family() {
        let valid: Vec<_> = TwoElementKind::all().into_iter().filter(|&k| validate_operad(&two_element(k, 3)).valid).collect();
        assert!(valid.contains(&TwoElementKind::Or));
        assert!(valid.contains(&TwoElementKind::Additive { shift: true, sign: false }));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let (_, p) = random_two_element(&mut rng, 3).unwrap();
            assert!(validate_operad(&p).valid);
        }
    }
}

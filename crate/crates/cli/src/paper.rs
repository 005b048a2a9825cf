//! Fixed worked examples with known answers, run by `paper-suite`.

use std::collections::BTreeMap;
use std::sync::Arc;

use catlift::chaincx::{
    homotopy_truncate, identity_cone, naive_truncate, reproduce_truncation_counterexample, Field, FiniteComplex, Fp,
};
use catlift::corpus::small_categories;
use catlift::cycops::{associative, right_adjoint_r, terminal, two_element, TruncatedOperad, TwoElementKind};
use catlift::fincat::constructions::{discrete, empty, ordinal, terminal as point};
use catlift::fincat::{coproduct, opposite, product, CatFunctor, FiniteGroup};
use catlift::invcat::{
    check_inv_adjunctions, dagger_r, forget_inv, involutive_codiscrete, involutive_corpus, is_inv_cofibration, l_inv, r_inv,
    reproduce_dagger_counterexample, DaggerVariant, EquivariantFunctor, InvolutiveCategory,
};
use catlift::nabla::build_nabla;
use catlift::semidirect::{check_semidirect_hypotheses, verify_lan_formula, GroupAction};
use catlift::setval::{comma_over, SetDiagram};
use catlift::Result;
use serde_json::{json, Value};

use crate::suite::{fully_faithful, Settings};

pub type Case = fn(&Settings) -> Result<(bool, Value)>;

/// Every case, by name.
pub fn cases() -> BTreeMap<&'static str, Case> {
    let list: [(&'static str, Case); 19] = [
        ("comma-terminal", comma_terminal),
        ("fully-faithful", fully_faithful_case),
        ("semidirect-lan", semidirect_lan),
        ("dagger-section", dagger_section),
        ("inv-sizes", inv_sizes),
        ("forget-l", forget_l),
        ("forget-r", forget_r),
        ("r-adjoint", r_adjoint),
        ("exercise-fixed", exercise_fixed),
        ("dagger-r-single", dagger_r_single),
        ("dagger", dagger),
        ("semidirect-boundaries", semidirect_boundaries),
        ("nabla-hom00", nabla_hom00),
        ("nabla-generator", nabla_generator),
        ("rp-sizes", rp_sizes),
        ("rp-underlying", rp_underlying),
        ("cone-acyclic", cone_acyclic),
        ("truncations-of-cone", truncations_of_cone),
        ("truncation", truncation),
    ];
    list.into_iter().collect()
}

/// For `ι` the inclusion of `{0, 2}` into `[2]`, each `ι↓ι(c)` has the
/// terminal object `(c, id)`.
fn comma_terminal(_: &Settings) -> Result<(bool, Value)> {
    let d = Arc::new(ordinal(2));
    let (c, kept) = d.full_subcategory(&[0, 2]);
    let iota = CatFunctor::new(Arc::new(c), d.clone(), vec![0, 2], kept)?;
    let mut found = Vec::new();
    for c in 0..iota.dom().num_objects() {
        let comma = comma_over(&iota, iota.obj(c));
        let cat = &comma.category;
        let terminal: Vec<usize> =
            (0..cat.num_objects()).filter(|&t| (0..cat.num_objects()).all(|o| cat.hom(o, t).len() == 1)).collect();
        let ok = terminal.len() == 1 && d.is_identity(comma.arrows[terminal[0]]) && comma.projection.obj(terminal[0]) == c;
        found.push(ok);
    }
    Ok((found.iter().all(|&b| b), json!({ "terminal_is_identity": found })))
}

fn fully_faithful_case(s: &Settings) -> Result<(bool, Value)> {
    let o = fully_faithful(s, 0)?;
    Ok((o.passed, json!({"inclusions": o.report["inclusions"]})))
}

/// `C₂` swapping two objects, `F(a) = {u}`, `F(b) = {v, w}`: both fibres of
/// `ι*ι_!F` have three elements.
fn semidirect_lan(_: &Settings) -> Result<(bool, Value)> {
    let c = Arc::new(discrete(&["a", "b"]));
    let act =
        GroupAction::permuting_objects(FiniteGroup::cyclic(2), c.clone(), |g| if g == 0 { vec![0, 1] } else { vec![1, 0] })?;
    let f = Arc::new(SetDiagram::from_names(c, &[("a", vec!["u"]), ("b", vec!["v", "w"])], &[])?);
    let r = verify_lan_formula(&act, &f)?;
    Ok((r.passed && r.restricted_sizes == [3, 3], json!({"restricted_sizes": r.restricted_sizes})))
}

fn dagger_section(_: &Settings) -> Result<(bool, Value)> {
    let r = reproduce_dagger_counterexample(DaggerVariant::Swap)?;
    Ok((r.p_isofib, json!({"p_isofib": r.p_isofib})))
}

fn inv_sizes(_: &Settings) -> Result<(bool, Value)> {
    let mut rows = BTreeMap::new();
    let mut ok = true;
    for (name, x) in small_categories() {
        let n = x.num_objects();
        let (l, r) = (l_inv(&x).base().num_objects(), r_inv(&x).base().num_objects());
        ok &= l == 2 * n && r == n * n;
        rows.insert(name, json!([n, l, r]));
    }
    Ok((ok, json!({ "objects_x_l_r": rows })))
}

fn forget_l(_: &Settings) -> Result<(bool, Value)> {
    let ok = small_categories().iter().all(|(_, x)| *forget_inv(&l_inv(x)) == *coproduct(x, &Arc::new(opposite(x))).category);
    Ok((ok, json!({})))
}

fn forget_r(_: &Settings) -> Result<(bool, Value)> {
    let ok = small_categories().iter().all(|(_, x)| *forget_inv(&r_inv(x)) == *product(x, &Arc::new(opposite(x))).category);
    Ok((ok, json!({})))
}

fn r_adjoint(s: &Settings) -> Result<(bool, Value)> {
    let r = check_inv_adjunctions(&small_categories(), &involutive_corpus(), s.budget)?;
    let right: Vec<_> = r.entries.iter().filter(|e| e.side == "R").collect();
    let ok = !right.is_empty() && right.iter().all(|e| e.bijective && e.hom_inv == e.hom_cat) && r.passed;
    Ok((ok, json!({"pairs": right.len()})))
}

/// `∅ → pt` with the identity involution is not a cofibration: the new
/// object is fixed.
fn exercise_fixed(_: &Settings) -> Result<(bool, Value)> {
    let e = Arc::new(empty());
    let pt = Arc::new(point());
    let f = CatFunctor::new(e.clone(), pt.clone(), vec![], vec![])?;
    let f =
        EquivariantFunctor::new(InvolutiveCategory::identity_involution(e)?, InvolutiveCategory::identity_involution(pt)?, f)?;
    let cof = is_inv_cofibration(&f);
    Ok((!cof, json!({ "cofibration": cof })))
}

fn dagger_r_single(_: &Settings) -> Result<(bool, Value)> {
    let x = involutive_codiscrete(&["x", "x'", "y"], &[1, 0, 2])?;
    let (d, _) = dagger_r(&x);
    let objects = d.inner().base().objects().to_vec();
    Ok((objects == ["y"], json!({ "objects": objects })))
}

fn dagger(_: &Settings) -> Result<(bool, Value)> {
    let r = reproduce_dagger_counterexample(DaggerVariant::Swap)?;
    Ok((r.p_isofib && !r.rp_isofib, serde_json::to_value(&r).expect("report serializes")))
}

/// `C₂` acting on `Δ≤N` by reversal sends boundary inclusions to levelwise
/// monomorphisms.
fn semidirect_boundaries(s: &Settings) -> Result<(bool, Value)> {
    let nb = build_nabla(s.dim)?;
    let corpus: Vec<_> = (0..=s.dim).map(|n| nb.delta.boundary_inclusion(n)).collect();
    let r = check_semidirect_hypotheses(&nb.action.opposite(), &corpus, &|f| f.is_iso(), &|f| f.is_injective())?;
    Ok((r.passed, json!({ "maps": corpus.len() })))
}

fn nabla_hom00(s: &Settings) -> Result<(bool, Value)> {
    let n = build_nabla(s.dim)?.hom_count(0, 0);
    Ok((n == 2, json!({ "hom_0_0": n })))
}

fn nabla_generator(s: &Settings) -> Result<(bool, Value)> {
    let nb = build_nabla(s.dim.max(1))?;
    let g = nb.induce(&nb.delta.boundary_inclusion(1))?;
    let normal = nb.is_normal_mono(&g)?;
    Ok((normal, json!({ "normal_mono": normal })))
}

fn rp_operads(bound: usize) -> Vec<(&'static str, TruncatedOperad)> {
    vec![("terminal", terminal(bound, true)), ("associative", associative(bound)), ("or", two_element(TwoElementKind::Or, bound))]
}

fn rp_sizes(s: &Settings) -> Result<(bool, Value)> {
    let mut ok = true;
    let mut rows = BTreeMap::new();
    for (name, p) in rp_operads(s.arity_bound) {
        let rp = right_adjoint_r(&p)?;
        let sizes: Vec<usize> = (0..=p.bound()).map(|n| rp.operad().size(n)).collect();
        ok &= (0..=p.bound()).all(|n| sizes[n] == p.size(n).pow(n as u32 + 1));
        rows.insert(name, sizes);
    }
    Ok((ok, json!({ "r_sizes": rows })))
}

/// The elements of `R P(n)` are exactly the `(n+1)`-tuples of elements of `P(n)`.
fn rp_underlying(s: &Settings) -> Result<(bool, Value)> {
    let mut ok = true;
    for (_, p) in rp_operads(s.arity_bound) {
        let rp = right_adjoint_r(&p)?;
        for n in 0..=p.bound() {
            let mut tuples: Vec<String> = vec![String::new()];
            for k in 0..=n {
                tuples = tuples
                    .iter()
                    .flat_map(|t| p.elements(n).iter().map(move |x| if k == 0 { x.clone() } else { format!("{t},{x}") }))
                    .collect();
            }
            let mut want: Vec<String> = tuples.into_iter().map(|t| format!("({t})")).collect();
            let mut got = rp.operad().elements(n).to_vec();
            want.sort();
            got.sort();
            ok &= want == got;
        }
    }
    Ok((ok, json!({})))
}

fn cone_homology<F: Field>() -> Vec<(i32, usize)> {
    identity_cone::<F>().homology_dims()
}

fn cone_acyclic(_: &Settings) -> Result<(bool, Value)> {
    let dims = [cone_homology::<Fp<2>>(), cone_homology::<Fp<3>>(), cone_homology::<Fp<5>>()];
    let ok = dims.iter().flatten().all(|&(_, d)| d == 0);
    Ok((ok, json!({ "homology": dims })))
}

fn truncations_of_cone(_: &Settings) -> Result<(bool, Value)> {
    let c = identity_cone::<Fp<2>>();
    let naive = naive_truncate(&c);
    let homotopy = homotopy_truncate(&c);
    let ok = naive == FiniteComplex::concentrated(0, 1) && homotopy.is_zero();
    Ok((ok, json!({"naive_dims": naive.homology_dims(), "homotopy_zero": homotopy.is_zero()})))
}

fn truncation(_: &Settings) -> Result<(bool, Value)> {
    let reports = [reproduce_truncation_counterexample::<Fp<2>>()?, reproduce_truncation_counterexample::<Fp<5>>()?];
    let ok = reports.iter().all(|r| r.acyclic_fib && !r.fr_acyclic_fib);
    Ok((ok, serde_json::to_value(&reports).expect("reports serialize")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_case_passes() {
        let s = Settings::default();
        for (name, case) in cases() {
            let (ok, v) = case(&s).unwrap();
            assert!(ok, "{name}: {v}");
        }
    }
}

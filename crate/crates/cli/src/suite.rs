//! Corpus-wide property checks. Each returns a JSON report whose `passed`
//! field decides the exit code of the command that ran it.

use std::sync::Arc;

use catlift::catmodel::{bounded_soa, default_acyclic_cofibrations, has_rlp, is_isofibration};
use catlift::chaincx::{
    check_change_of_rings_counts, check_preservation, dual_number_modules, module_map_corpus,
    reproduce_truncation_counterexample, split_modules, truncated_polynomial_modules, AlgebraMap, Field, FiniteAlgebra, Fp,
    Matrix, Module,
};
use catlift::corpus::{
    action_corpus, model_categories, random_category, random_diagram, random_functor, random_real_simplicial_set,
    small_categories,
};
use catlift::cycops::{
    associative, check_adjunction_count, random_two_element, right_adjoint_r, terminal, terminal_cyclic, two_element,
    two_element_cyclic, validate_cyclic, validate_operad, TruncatedCyclicOperad, TruncatedOperad, TwoElementKind,
};
use catlift::fincat::{enumerate_functors, CatFunctor, FiniteCategory};
use catlift::invcat::{check_exercise, check_inv_adjunctions, involutive_corpus};
use catlift::nabla::{boundary_inclusion, build_nabla, simplex_to_point};
use catlift::semidirect::verify_lan_formula;
use catlift::setval::{
    certify_adjunction, enumerate_maps, lan, ran, Corpus, DiagramMap, Diagrams, LanAdjunction, RanAdjunction, SetDiagram,
};
use catlift::{Error, Result};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// Search budgets and corpus sizes shared by every command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Settings {
    pub budget: usize,
    pub max_morphisms: usize,
    pub max_stages: usize,
    pub arity_bound: usize,
    pub dim: usize,
    pub seed: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { budget: 200_000, max_morphisms: 12, max_stages: 4, arity_bound: 3, dim: 3, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub passed: bool,
    pub report: Value,
}

impl Outcome {
    fn new(passed: bool, mut report: Value) -> Self {
        report["passed"] = json!(passed);
        Outcome { passed, report }
    }
}

fn rng(s: &Settings) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(s.seed)
}

/// Runs `f`, turning a budget overrun into `None`.
fn within_budget<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::Budget { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// A run whose checks were all cut short by the budget has shown nothing.
fn require_progress(checked: usize, skipped: usize, what: &'static str, s: &Settings) -> Result<()> {
    if checked == 0 && skipped > 0 {
        return Err(Error::Budget { what, limit: s.budget });
    }
    Ok(())
}

/// One map for each ordered pair of objects that has any, up to `want`.
pub fn sample_maps(rng: &mut ChaCha8Rng, objs: &[Arc<SetDiagram>], want: usize, budget: usize) -> Result<Vec<DiagramMap>> {
    let mut out = Vec::new();
    for a in objs {
        for b in objs {
            if let Some(m) = enumerate_maps(a, b, budget)?.choose(rng) {
                out.push(m.clone());
            }
        }
    }
    out.shuffle(rng);
    out.truncate(want);
    Ok(out)
}

const MAX_ELEMENTS: usize = 20;

fn certify_both(
    rng: &mut ChaCha8Rng,
    iota: &CatFunctor,
    s: &Settings,
) -> Result<[(String, catlift::setval::AdjunctionReport); 2]> {
    let (c, d) = (iota.dom(), iota.cod());
    let left: Vec<_> = (0..2).map(|_| random_diagram(rng, c, MAX_ELEMENTS)).collect::<Result<_>>()?;
    let right: Vec<_> = (0..2).map(|_| random_diagram(rng, d, MAX_ELEMENTS)).collect::<Result<_>>()?;
    let left_maps = sample_maps(rng, &left, 3, s.budget)?;
    let right_maps = sample_maps(rng, &right, 3, s.budget)?;
    let diagrams = Diagrams { budget: s.budget };
    let lan_adj = LanAdjunction::new(iota.clone(), diagrams.clone());
    let lan_report = certify_adjunction(
        &lan_adj,
        &Corpus { left_objects: &left, right_objects: &right, left_maps: &left_maps, right_maps: &right_maps },
    )?;
    let ran_adj = RanAdjunction::new(iota.clone(), diagrams);
    let ran_report = certify_adjunction(
        &ran_adj,
        &Corpus { left_objects: &right, right_objects: &left, left_maps: &right_maps, right_maps: &left_maps },
    )?;
    Ok([("lan".into(), lan_report), ("ran".into(), ran_report)])
}

/// Both Kan adjunctions along random functors, with the hom-set bijection
/// and its naturality checked on random diagrams and maps.
pub fn kan_adjunctions(s: &Settings, instances: usize) -> Result<Outcome> {
    let mut rng = rng(s);
    let (mut certified, mut skipped, mut checks) = (0usize, 0usize, 0usize);
    let mut failures = Vec::new();
    let mut attempts = 0;
    while certified < instances && attempts < 4 * instances {
        attempts += 1;
        let (cn, c) = random_category(&mut rng, s.max_morphisms);
        let (dn, d) = random_category(&mut rng, s.max_morphisms);
        let Some(iota) = within_budget(random_functor(&mut rng, &c, &d, s.budget))?.flatten() else {
            skipped += 1;
            continue;
        };
        let Some(reports) = within_budget(certify_both(&mut rng, &iota, s))? else {
            skipped += 1;
            continue;
        };
        certified += 1;
        for (side, r) in reports {
            checks += r.checks;
            if !r.passed {
                failures.push(json!({"side": side, "dom": cn, "cod": dn, "failure": r.failure}));
            }
        }
    }
    if failures.is_empty() && certified < instances && skipped > 0 {
        return Err(Error::Budget { what: "certifying the requested adjunction instances", limit: s.budget });
    }
    let passed = failures.is_empty() && certified >= instances;
    Ok(Outcome::new(passed, json!({"instances": certified, "skipped": skipped, "checks": checks, "failures": failures})))
}

fn fully_faithful_instance(rng: &mut ChaCha8Rng, name: &str, d: &Arc<FiniteCategory>, objs: &[usize]) -> Result<Option<Value>> {
    let (c, kept) = d.full_subcategory(objs);
    let c = Arc::new(c);
    let iota = CatFunctor::new(c.clone(), d.clone(), objs.to_vec(), kept)?;
    if !iota.is_full() || !iota.is_faithful() {
        return Err(Error::Internal("full subcategory inclusion is not fully faithful".into()));
    }
    let mut xs: Vec<Arc<SetDiagram>> = (0..c.num_objects()).map(|k| Arc::new(SetDiagram::representable(c.clone(), k))).collect();
    for _ in 0..3 {
        xs.push(random_diagram(rng, &c, MAX_ELEMENTS)?);
    }
    for (k, x) in xs.iter().enumerate() {
        let unit = lan(&iota, x)?.unit()?;
        let counit = ran(&iota, x)?.counit()?;
        if !unit.is_iso() || !counit.is_iso() {
            return Ok(Some(json!({
                "category": name, "objects": objs, "diagram": k,
                "unit_iso": unit.is_iso(), "counit_iso": counit.is_iso(),
            })));
        }
    }
    Ok(None)
}

/// For full subcategory inclusions `ι`, the unit `X → ι*ι_!X` and the counit
/// `ι*ι_*X → X` are natural isomorphisms.
pub fn fully_faithful(s: &Settings, random_instances: usize) -> Result<Outcome> {
    let mut rng = rng(s);
    let mut cats = small_categories();
    for _ in 0..random_instances {
        cats.push(random_category(&mut rng, s.max_morphisms));
    }
    let (mut inclusions, mut skipped) = (0, 0);
    let mut failures = Vec::new();
    for (name, d) in &cats {
        let n = d.num_objects();
        for mask in 1u32..(1 << n.min(4)) {
            let objs: Vec<usize> = (0..n).filter(|&k| mask >> k & 1 == 1).collect();
            match within_budget(fully_faithful_instance(&mut rng, name, d, &objs))? {
                None => skipped += 1,
                Some(r) => {
                    inclusions += 1;
                    failures.extend(r);
                }
            }
        }
    }
    require_progress(inclusions, skipped, "every full inclusion", s)?;
    let passed = failures.is_empty();
    Ok(Outcome::new(passed, json!({"inclusions": inclusions, "skipped": skipped, "failures": failures})))
}

/// The comparison `ι*ι_!F ≅ ∐_g ρ_{g⁻¹}*F` over the action corpus.
pub fn semidirect_lan(s: &Settings) -> Result<Outcome> {
    let mut rng = rng(s);
    let mut actions = Vec::new();
    let mut failures = Vec::new();
    for (name, action) in action_corpus()? {
        let c = action.target().clone();
        let mut fs: Vec<Arc<SetDiagram>> =
            (0..c.num_objects()).map(|k| Arc::new(SetDiagram::representable(c.clone(), k))).collect();
        for _ in 0..3 {
            fs.push(random_diagram(&mut rng, &c, MAX_ELEMENTS)?);
        }
        let mut ok = 0;
        for (k, f) in fs.iter().enumerate() {
            let r = verify_lan_formula(&action, f)?;
            if r.passed {
                ok += 1;
            } else {
                failures.push(json!({"action": name, "diagram": k, "failure": r.failure}));
            }
        }
        actions.push(json!({"action": name, "group_order": action.group().order(), "morphisms": c.num_morphisms(), "diagrams": fs.len(), "passed": ok}));
    }
    let too_big = actions.iter().any(|a| a["morphisms"].as_u64().unwrap_or(0) > 12);
    let passed = failures.is_empty() && !too_big;
    Ok(Outcome::new(passed, json!({"actions": actions, "failures": failures})))
}

/// Both presentations of `∇≤N` for `N ≤ max_dim`: the comparison is an
/// isomorphism and hom-sets have twice the size of those of `Δ≤N`.
pub fn nabla_consistency(max_dim: usize) -> Result<Outcome> {
    let mut levels = Vec::new();
    let mut failures = Vec::new();
    let mut hom00 = None;
    for n in 0..=max_dim {
        let nb = build_nabla(n)?;
        let (sd, pairs) = (&nb.semidirect.category, &nb.pairs);
        let iso = &nb.iso;
        let bijective = iso.is_injective_on_morphisms()
            && iso.is_injective_on_objects()
            && sd.num_morphisms() == pairs.num_morphisms()
            && sd.num_objects() == pairs.num_objects();
        let respects = sd.composable_pairs().all(|(g, f, h)| pairs.try_compose(iso.mor(g), iso.mor(f)) == Some(iso.mor(h)));
        if !bijective || !respects {
            failures.push(format!("N={n}: comparison functor is not an isomorphism"));
        }
        let delta = nb.delta.category();
        for a in 0..=n {
            for b in 0..=n {
                let (h, hp, hd) = (sd.hom(a, b).len(), pairs.hom(a, b).len(), delta.hom(a, b).len());
                if h != 2 * hd || hp != 2 * hd {
                    failures.push(format!("N={n}: |hom([{a}],[{b}])| is {h} and {hp}, expected {}", 2 * hd));
                }
            }
        }
        hom00.get_or_insert(nb.hom_count(0, 0));
        levels.push(json!({"dim": n, "objects": sd.num_objects(), "morphisms": sd.num_morphisms()}));
    }
    if hom00 != Some(2) {
        failures.push(format!("|hom([0],[0])| = {hom00:?}"));
    }
    let passed = failures.is_empty();
    Ok(Outcome::new(passed, json!({"levels": levels, "hom_0_0": hom00, "failures": failures})))
}

/// `from_involutive ∘ to_involutive` on random real simplicial sets, and the
/// square `(α,1)* ∘ (id,σ)* = (id,σ)* ∘ (𝓕α,1)*` for every `α`.
pub fn rsset_roundtrip(s: &Settings, count: usize, max_simplices: usize) -> Result<Outcome> {
    let mut rng = rng(s);
    let nb = build_nabla(s.dim)?;
    let mut failures = Vec::new();
    let mut sizes = Vec::new();
    for k in 0..count {
        let x = random_real_simplicial_set(&mut rng, &nb, max_simplices)?;
        sizes.push(x.total_size());
        let (a, sigma) = nb.to_involutive(&x)?;
        let back = nb.from_involutive(&a, &sigma)?;
        if back != *x {
            failures.push(json!({"instance": k, "failure": "roundtrip changed the data"}));
        }
        let squares = nb.sigma_square_failures(&x);
        if !squares.is_empty() {
            failures.push(json!({"instance": k, "square_fails_at": squares}));
        }
    }
    let too_big = sizes.iter().any(|&n| n > max_simplices);
    let passed = failures.is_empty() && !too_big;
    Ok(Outcome::new(passed, json!({"dim": s.dim, "instances": count, "simplices": sizes, "failures": failures})))
}

/// `L ⊣ forget ⊣ R` on the small corpus, and the cofibration criterion
/// against bounded lifting.
pub fn involutive(s: &Settings) -> Result<Outcome> {
    let plain = small_categories();
    let inv = involutive_corpus();
    let adj = check_inv_adjunctions(&plain, &inv, s.budget)?;
    let ex = check_exercise(&inv, s.budget)?;
    let passed = adj.passed && ex.disagreements.is_empty();
    let summary = json!({
        "hom_pairs": adj.entries.len(),
        "naturality_checks": adj.naturality_checks,
        "failure": adj.failure,
    });
    Ok(Outcome::new(passed, json!({"adjunctions": summary, "exercise": ex})))
}

/// `is_isofibration ⟺ RLP{pt → E}` on every functor between corpus
/// categories.
pub fn isofibration_oracle(s: &Settings) -> Result<Outcome> {
    let cats = model_categories();
    let tests = default_acyclic_cofibrations().maps;
    let (mut functors, mut isofibrations, mut skipped) = (0, 0, 0);
    let mut failures = Vec::new();
    for (cn, c) in &cats {
        for (dn, d) in &cats {
            let Some(fs) = within_budget(enumerate_functors(c, d, s.budget))? else {
                skipped += 1;
                continue;
            };
            for (k, p) in fs.iter().enumerate() {
                let Some(rlp) = within_budget(has_rlp(&tests, p, s.budget))? else {
                    skipped += 1;
                    continue;
                };
                let iso = is_isofibration(p);
                functors += 1;
                isofibrations += iso as usize;
                if iso != rlp {
                    failures.push(json!({"dom": cn, "cod": dn, "functor": k, "isofibration": iso, "rlp": rlp}));
                }
            }
        }
    }
    require_progress(functors, skipped, "every lifting test", s)?;
    let passed = failures.is_empty();
    Ok(Outcome::new(
        passed,
        json!({"functors": functors, "isofibrations": isofibrations, "skipped": skipped, "failures": failures}),
    ))
}

/// Bounded small object argument against boundary inclusions on maps of
/// truncated simplicial sets.
pub fn soa_factorizations(s: &Settings) -> Result<Outcome> {
    let dim = s.dim.min(2);
    let gens: Vec<DiagramMap> = (0..=dim).map(|n| boundary_inclusion(n, dim)).collect();
    let mut maps: Vec<(String, DiagramMap)> = Vec::new();
    for n in 0..=dim {
        maps.push((format!("simplex {n} to point"), simplex_to_point(n, dim)));
        maps.push((format!("boundary inclusion {n}"), boundary_inclusion(n, dim)));
        let b = boundary_inclusion(n, dim);
        let to_point = simplex_to_point(n, dim);
        maps.push((format!("boundary {n} to point"), b.then(&to_point)?));
    }
    let mut results = Vec::new();
    let mut passed = true;
    let mut skipped = 0;
    for (name, f) in &maps {
        let Some(r) = within_budget(bounded_soa(&gens, f, s.max_stages, s.budget))? else {
            results.push(json!({"map": name, "skipped": true}));
            skipped += 1;
            continue;
        };
        let summary = r.summary(&gens, f);
        passed &= summary.recomposes && summary.cell_record_valid;
        results.push(json!({"map": name, "summary": summary}));
    }
    require_progress(results.len() - skipped, skipped, "every factorization", s)?;
    Ok(Outcome::new(passed, json!({"dim": dim, "factorizations": results})))
}

fn sizes(p: &TruncatedOperad) -> Vec<usize> {
    (0..=p.bound()).map(|n| p.size(n)).collect()
}

/// `R P` is a valid cyclic operad of the predicted size, and the hom-count
/// comparison of the adjunction holds on small instances.
pub fn cyclic_operads(s: &Settings) -> Result<Outcome> {
    let mut rng = rng(s);
    let bound = s.arity_bound;
    let (kind, random) = random_two_element(&mut rng, bound)?;
    let targets: Vec<(String, TruncatedOperad)> = vec![
        ("terminal".into(), terminal(bound, true)),
        ("associative".into(), associative(bound)),
        (format!("random two-element ({kind:?})"), random),
    ];
    let mut failures = Vec::new();
    let mut adjoints = Vec::new();
    for (name, p) in &targets {
        if !validate_operad(p).valid {
            failures.push(json!({"operad": name, "failure": "input fails the operad axioms"}));
            continue;
        }
        let rp = right_adjoint_r(p)?;
        let report = validate_cyclic(&rp);
        let expected: Vec<usize> = (0..=bound).map(|n| p.size(n).pow(n as u32 + 1)).collect();
        let got = sizes(rp.operad());
        if !report.valid || got != expected {
            failures.push(json!({"operad": name, "valid": report.valid, "sizes": got, "expected": expected, "violations": report.violations}));
        }
        adjoints.push(json!({"operad": name, "sizes": sizes(p), "r_sizes": got, "cyclic_checks": report.checks}));
    }

    let small_bound = bound.min(3);
    let mut sources: Vec<(String, TruncatedCyclicOperad)> = vec![
        ("terminal".into(), terminal_cyclic(small_bound, true)),
        ("terminal without constants".into(), terminal_cyclic(small_bound, false)),
    ];
    let mut plain: Vec<(String, TruncatedOperad)> = vec![
        ("terminal".into(), terminal(small_bound, true)),
        ("terminal without constants".into(), terminal(small_bound, false)),
    ];
    for k in TwoElementKind::all() {
        let q = two_element_cyclic(k, small_bound);
        if validate_cyclic(&q).valid {
            sources.push((format!("{k:?}"), q));
        }
        let p = two_element(k, small_bound);
        if validate_operad(&p).valid {
            plain.push((format!("{k:?}"), p));
        }
    }
    let mut counts = Vec::new();
    let mut skipped = 0;
    for (qn, q) in &sources {
        for (pn, p) in &plain {
            let Some(c) = within_budget(check_adjunction_count(q, p, s.budget))? else {
                skipped += 1;
                continue;
            };
            if !(c.counts_agree && c.pi0_bijective && c.transpose_inverts) {
                failures.push(json!({"cyclic": qn, "operad": pn, "count": c}));
            }
            counts.push(json!({"cyclic": qn, "operad": pn, "operad_maps": c.operad_maps, "cyclic_maps": c.cyclic_maps}));
        }
    }
    require_progress(counts.len(), skipped, "every adjunction count", s)?;
    let passed = failures.is_empty();
    Ok(Outcome::new(
        passed,
        json!({"arity_bound": bound, "right_adjoints": adjoints, "hom_counts": counts, "skipped": skipped, "failures": failures}),
    ))
}

fn algebra_maps<F: Field>() -> Result<Vec<(&'static str, AlgebraMap<F>, Vec<Module<F>>, Vec<Module<F>>)>> {
    let k = Arc::new(FiniteAlgebra::<F>::field());
    let dual = Arc::new(FiniteAlgebra::truncated_polynomial(2));
    let quartic = Arc::new(FiniteAlgebra::truncated_polynomial(4));
    let split = Arc::new(FiniteAlgebra::split(2));
    let vector_spaces: Vec<Module<F>> = (1..=3).map(Module::vector_space).collect();
    // x ↦ x² makes F[x]/(x⁴) free over F[x]/(x²) on 1, x
    let square = Matrix::from_fn(4, 2, |r, c| if r == 2 * c { F::one() } else { F::zero() });
    Ok(vec![
        ("field to dual numbers", AlgebraMap::from_field(dual.clone()), vector_spaces.clone(), dual_number_modules(3)),
        ("field to F x F", AlgebraMap::from_field(split.clone()), vector_spaces.clone(), split_modules(2, 3)),
        ("identity of dual numbers", AlgebraMap::identity(dual.clone()), dual_number_modules(3), dual_number_modules(3)),
        ("x to x^2", AlgebraMap::new(dual, quartic, square)?, dual_number_modules(3), truncated_polynomial_modules(4, 3)),
        ("identity of the field", AlgebraMap::identity(k), vector_spaces.clone(), vector_spaces),
    ])
}

/// Free bases for the target as a module over the source, for the maps above.
fn free_basis<F: Field>(name: &str, f: &AlgebraMap<F>) -> Vec<Vec<F>> {
    let n = f.target().dim();
    let e = |i: usize| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect::<Vec<F>>();
    match name {
        "x to x^2" => vec![e(0), e(1)],
        "identity of dual numbers" | "identity of the field" => vec![e(0)],
        _ => (0..n).map(e).collect(),
    }
}

fn chain_checks<F: Field>(s: &Settings) -> Result<Value> {
    let mut rng = rng(s);
    let truncation = reproduce_truncation_counterexample::<F>()?;
    let mut failures: Vec<String> = Vec::new();
    if !(truncation.acyclic_fib && !truncation.fr_acyclic_fib && !truncation.naive_image_quasi_iso) {
        failures.push("truncation counterexample does not reproduce".into());
    }
    let mut maps = Vec::new();
    for (name, f, r_modules, s_modules) in algebra_maps::<F>()? {
        let counts = check_change_of_rings_counts(&f, &r_modules, &s_modules)?;
        if !counts.passed {
            failures.push(format!("{name}: change-of-rings hom counts disagree"));
        }
        let free = f.is_free_basis(&free_basis(name, &f));
        let corpus = module_map_corpus(&r_modules, 6, &mut rng)?;
        let pres = check_preservation(&f, &corpus)?;
        if !free {
            failures.push(format!("{name}: the target is not free over the source"));
        } else if !pres.fr_preserves {
            failures.push(format!("{name}: restrict∘coinduce loses a property: {:?}", pres.failures));
        }
        maps.push(json!({"map": name, "hom_pairs": counts.entries.len(), "free": free, "preservation": pres}));
    }
    Ok(json!({"p": F::characteristic(), "truncation": truncation, "algebra_maps": maps, "failures": failures}))
}

/// The truncation counterexample and the change-of-rings checks over `F_p`.
pub fn chain_suite(s: &Settings, primes: &[u32]) -> Result<Outcome> {
    let mut fields = Vec::new();
    for &p in primes {
        let v = match p {
            2 => chain_checks::<Fp<2>>(s)?,
            3 => chain_checks::<Fp<3>>(s)?,
            5 => chain_checks::<Fp<5>>(s)?,
            7 => chain_checks::<Fp<7>>(s)?,
            _ => return Err(Error::Invalid { what: "prime", detail: format!("{p} is not supported") }),
        };
        fields.push(v);
    }
    let passed = fields.iter().all(|v| v["failures"].as_array().is_some_and(Vec::is_empty));
    Ok(Outcome::new(passed, json!({"fields": fields})))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nabla_levels_agree() {
        let o = nabla_consistency(2).unwrap();
        assert!(o.passed, "{}", o.report);
        assert_eq!(o.report["hom_0_0"], 2);
    }

    #[test]
    fn small_kan_run() {
        let o = kan_adjunctions(&Settings { max_morphisms: 6, ..Settings::default() }, 5).unwrap();
        assert!(o.passed, "{}", o.report);
    }

    #[test]
    fn chain_over_two() {
        let o = chain_suite(&Settings::default(), &[2]).unwrap();
        assert!(o.passed, "{}", o.report);
    }
}

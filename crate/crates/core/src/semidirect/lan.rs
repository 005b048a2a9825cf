use std::sync::Arc;

use serde::Serialize;

use super::{inclusion_iota, semidirect, GroupAction, SemidirectCategory};
use crate::error::{Error, Result};
use crate::setval::{comma_over, coproduct_diagrams, lan, DiagramMap, SetDiagram};

/// How `ι↓x` splits: one connected component per group element, `g` owning
/// the component of `(ρ_{g⁻¹}x, (id_x, g))`, which is terminal there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommaPartition {
    pub object: String,
    pub components: usize,
    /// Component label of the distinguished object for each group element.
    pub component_of: Vec<usize>,
    pub terminal: Vec<bool>,
}

impl CommaPartition {
    pub fn holds(&self, order: usize) -> bool {
        let mut seen = vec![false; self.components];
        self.components == order
            && self.component_of.iter().all(|&k| !std::mem::replace(&mut seen[k], true))
            && self.terminal.iter().all(|&t| t)
    }
}

pub fn comma_partition(sd: &SemidirectCategory, x: usize) -> CommaPartition {
    let iota = inclusion_iota(sd);
    let comma = comma_over(&iota, x);
    let cc = &*comma.category;
    let labels = cc.components();
    let components = labels.iter().copied().max().map_or(0, |m| m + 1);
    let (c, grp) = (&*sd.action.target, &sd.action.group);
    let mut component_of = Vec::new();
    let mut terminal = Vec::new();
    for g in 0..grp.order() {
        let a = sd.action.rho(grp.inverse(g)).obj(x);
        let u = sd.morphism(c.identity(x), g);
        let o = (0..cc.num_objects())
            .find(|&o| comma.projection.obj(o) == a && comma.arrows[o] == u)
            .expect("(id_x, g) lies in the comma category");
        component_of.push(labels[o]);
        terminal.push((0..cc.num_objects()).filter(|&p| labels[p] == labels[o]).all(|p| cc.hom(p, o).len() == 1));
    }
    CommaPartition { object: c.object_name(x).to_string(), components, component_of, terminal }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LanFormulaReport {
    pub passed: bool,
    /// `|ι*ι_!F(x)|` per object.
    pub restricted_sizes: Vec<usize>,
    /// `|∐_g F(ρ_{g⁻¹}x)|` per object.
    pub coproduct_sizes: Vec<usize>,
    pub partitions: Vec<CommaPartition>,
    pub failure: Option<String>,
}

/// Compares `ι*ι_!F` with `∐_g (ρ_{g⁻¹})*F` through the map sending
/// `(g, a)` to the class of `a` placed along `(id_x, g): ρ_{g⁻¹}x → x`.
pub fn verify_lan_formula(action: &GroupAction, f: &Arc<SetDiagram>) -> Result<LanFormulaReport> {
    let c = action.target();
    if f.shape() != c {
        return Err(Error::invalid("left Kan extension formula", "diagram is not over the acted-on category"));
    }
    let grp = action.group();
    let sd = semidirect(action);
    let iota = inclusion_iota(&sd);
    let kan = lan(&iota, f)?;
    let left = Arc::new(kan.diagram().restrict(&iota)?);
    let twisted = (0..grp.order())
        .map(|g| Ok((grp.name(g).to_string(), f.restrict(action.rho(grp.inverse(g)))?)))
        .collect::<Result<Vec<_>>>()?;
    let parts: Vec<(String, &SetDiagram)> = twisted.iter().map(|(t, d)| (t.clone(), d)).collect();
    let (right, _) = coproduct_diagrams(c, &parts)?;
    let right = Arc::new(right);
    let components: Vec<Vec<usize>> = (0..c.num_objects())
        .map(|x| {
            let mut out = Vec::with_capacity(right.size(x));
            for g in 0..grp.order() {
                let a = action.rho(grp.inverse(g)).obj(x);
                let u = sd.morphism(c.identity(x), g);
                out.extend((0..f.size(a)).map(|e| kan.class_of(x, a, u, e)));
            }
            out
        })
        .collect();
    let cmp = DiagramMap::new_unchecked(right.clone(), left.clone(), components)?;
    let partitions: Vec<CommaPartition> = (0..c.num_objects()).map(|x| comma_partition(&sd, x)).collect();
    let mut failure = None;
    if let Some(p) = partitions.iter().find(|p| !p.holds(grp.order())) {
        failure = Some(format!("comma category over `{}` does not split by group element", p.object));
    } else if let Some(m) = cmp.first_unnatural() {
        failure = Some(format!("naturality square at `{}` fails", c.morphism_name(m)));
    } else if let Some(x) = (0..c.num_objects()).find(|&x| {
        let mut seen = vec![false; left.size(x)];
        right.size(x) != left.size(x) || cmp.component(x).iter().any(|&y| std::mem::replace(&mut seen[y], true))
    }) {
        failure = Some(format!("comparison is not a bijection at `{}`", c.object_name(x)));
    }
    Ok(LanFormulaReport {
        passed: failure.is_none(),
        restricted_sizes: (0..c.num_objects()).map(|x| left.size(x)).collect(),
        coproduct_sizes: (0..c.num_objects()).map(|x| right.size(x)).collect(),
        partitions,
        failure,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementVerdict {
    pub element: String,
    pub weq_preserved: bool,
    pub cof_preserved: bool,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub passed: bool,
    pub elements: Vec<ElementVerdict>,
}

/// For each `g`, checks that restriction along `ρ_g` sends every corpus map
/// satisfying `weq` (resp. `cof`) to a map satisfying it again.
pub fn check_semidirect_hypotheses(
    action: &GroupAction,
    corpus: &[DiagramMap],
    weq: &dyn Fn(&DiagramMap) -> bool,
    cof: &dyn Fn(&DiagramMap) -> bool,
) -> Result<HypothesisReport> {
    let grp = action.group();
    let mut elements = Vec::new();
    for g in 0..grp.order() {
        let mut failures = Vec::new();
        let (mut w_ok, mut c_ok) = (true, true);
        for (k, f) in corpus.iter().enumerate() {
            let r = f.restrict(action.rho(g))?;
            if weq(f) && !weq(&r) {
                w_ok = false;
                failures.push(format!("map {k}: weak equivalence not preserved"));
            }
            if cof(f) && !cof(&r) {
                c_ok = false;
                failures.push(format!("map {k}: cofibration not preserved"));
            }
        }
        elements.push(ElementVerdict { element: grp.name(g).to_string(), weq_preserved: w_ok, cof_preserved: c_ok, failures });
    }
    Ok(HypothesisReport { passed: elements.iter().all(|e| e.failures.is_empty()), elements })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::constructions::*;
    use crate::fincat::{all_permutations, FiniteGroup};
    use crate::setval::enumerate_maps;

    fn swap_ab() -> GroupAction {
        let c = Arc::new(discrete(&["a", "b"]));
        GroupAction::permuting_objects(FiniteGroup::cyclic(2), c, |g| if g == 0 { vec![0, 1] } else { vec![1, 0] }).unwrap()
    }

    #[test]
    fn swap_example_has_three_elements_at_a() {
        let act = swap_ab();
        let f = Arc::new(SetDiagram::from_names(act.target().clone(), &[("a", vec!["u"]), ("b", vec!["v", "w"])], &[]).unwrap());
        let r = verify_lan_formula(&act, &f).unwrap();
        assert!(r.passed, "{:?}", r.failure);
        assert_eq!(r.restricted_sizes, vec![3, 3]);
    }

    #[test]
    fn trivial_action_gives_copies() {
        let c = Arc::new(walking_arrow());
        let act = GroupAction::trivial(FiniteGroup::cyclic(3), c.clone());
        let f = Arc::new(SetDiagram::representable(c, 0));
        let r = verify_lan_formula(&act, &f).unwrap();
        assert!(r.passed);
        assert_eq!(r.restricted_sizes, vec![3, 3]);
    }

    #[test]
    fn symmetric_group_on_three_points() {
        let c = Arc::new(discrete(&["0", "1", "2"]));
        let perms = all_permutations(3);
        let act = GroupAction::permuting_objects(FiniteGroup::symmetric(3), c.clone(), |g| perms[g].clone()).unwrap();
        let f = Arc::new(SetDiagram::from_names(c, &[("0", vec!["p"]), ("1", vec![]), ("2", vec!["q", "r"])], &[]).unwrap());
        let r = verify_lan_formula(&act, &f).unwrap();
        assert!(r.passed);
        // each point sees every other point twice
        assert_eq!(r.restricted_sizes, vec![6, 6, 6]);
        assert!(r.partitions.iter().all(|p| p.components == 6));
    }

    #[test]
    fn non_equivariant_predicate_is_caught() {
        let act = swap_ab();
        let c = act.target().clone();
        let x = Arc::new(SetDiagram::from_names(c.clone(), &[("a", vec!["u"]), ("b", vec![])], &[]).unwrap());
        let y = Arc::new(SetDiagram::from_names(c, &[("a", vec!["u"]), ("b", vec!["v"])], &[]).unwrap());
        let corpus = enumerate_maps(&x, &y, 1000).unwrap();
        let mono = |f: &DiagramMap| f.is_injective();
        let ok = check_semidirect_hypotheses(&act, &corpus, &|f| f.is_iso(), &mono).unwrap();
        assert!(ok.passed);
        let hits_a = |f: &DiagramMap| f.source().size(0) > 0;
        let bad = check_semidirect_hypotheses(&act, &corpus, &|f| f.is_iso(), &hits_a).unwrap();
        assert!(!bad.passed);
        assert!(bad.elements[0].cof_preserved && !bad.elements[1].cof_preserved);
    }
}

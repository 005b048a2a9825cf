//! The acceptance criteria, run through the `catlift` binary. Prints one
//! PASS/FAIL line per criterion and exits non-zero if any fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use serde_json::Value;

struct Invocation {
    args: Vec<String>,
    code: i32,
    stdout: String,
    elapsed: Duration,
}

#[derive(Default)]
struct Runner {
    log: Vec<Invocation>,
}

impl Runner {
    fn run(&mut self, args: &str) -> &Invocation {
        let args: Vec<String> = args.split_whitespace().map(str::to_string).collect();
        let start = Instant::now();
        let out =
            Command::new(env!("CARGO_BIN_EXE_catlift")).args(&args).env_remove("CATLIFT_BUDGET").output().expect("catlift runs");
        let elapsed = start.elapsed();
        self.log.push(Invocation {
            args,
            code: out.status.code().unwrap_or(-1),
            stdout: String::from_utf8(out.stdout).expect("utf-8 output"),
            elapsed,
        });
        self.log.last().unwrap()
    }

    fn json(&mut self, args: &str) -> (i32, Value, Duration) {
        let inv = self.run(args);
        let v = serde_json::from_str(&inv.stdout).unwrap_or(Value::Null);
        (inv.code, v, inv.elapsed)
    }
}

type Verdict = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn empty(v: &Value) -> bool {
    v.as_array().is_some_and(Vec::is_empty)
}

fn kan(r: &mut Runner) -> Verdict {
    let (code, v, t) = r.json("adjoint --mode kan --instances 100 --max-morphisms 12");
    ensure(code == 0 && v["passed"] == true, format!("exit {code}: {}", v["failures"]))?;
    let n = v["instances"].as_u64().unwrap_or(0);
    ensure(n >= 100, format!("only {n} instances certified"))?;
    ensure(t < Duration::from_secs(60), format!("took {t:?}"))?;
    Ok(format!("{n} functors, {} checks, {} over budget, {:.1}s", v["checks"], v["skipped"], t.as_secs_f64()))
}

fn fully_faithful(r: &mut Runner) -> Verdict {
    let (code, v, _) = r.json("adjoint --mode fully-faithful --instances 10");
    ensure(code == 0 && empty(&v["failures"]), format!("exit {code}: {}", v["failures"]))?;
    let n = v["inclusions"].as_u64().unwrap_or(0);
    ensure(n > 0 && v["skipped"] == 0, "no inclusions checked")?;
    Ok(format!("{n} full subcategory inclusions"))
}

fn semidirect(r: &mut Runner) -> Verdict {
    let (code, v, _) = r.json("semidirect");
    ensure(code == 0 && empty(&v["failures"]), format!("exit {code}: {}", v["failures"]))?;
    let actions = v["actions"].as_array().cloned().unwrap_or_default();
    let orders: BTreeSet<u64> = actions.iter().filter_map(|a| a["group_order"].as_u64()).collect();
    ensure([2, 3, 4, 6].iter().all(|o| orders.contains(o)), format!("group orders {orders:?}"))?;
    ensure(actions.iter().all(|a| a["morphisms"].as_u64().is_some_and(|m| m <= 12)), "a category is too large")?;
    ensure(actions.iter().all(|a| a["passed"] == a["diagrams"]), "a comparison map is not an isomorphism")?;
    Ok(format!("{} actions", actions.len()))
}

fn nabla(r: &mut Runner) -> Verdict {
    let (code, v, _) = r.json("nabla --dim 4");
    ensure(code == 0 && empty(&v["failures"]), format!("exit {code}: {}", v["failures"]))?;
    ensure(v["hom_0_0"] == 2, format!("|hom([0],[0])| = {}", v["hom_0_0"]))?;
    let inv = r.run("nabla --dim 1 --homcount 1 1");
    ensure(inv.code == 0 && inv.stdout == "6\n", format!("homcount printed {:?}", inv.stdout))?;
    Ok("N ≤ 4, |hom([0],[0])| = 2".into())
}

fn rsset(r: &mut Runner) -> Verdict {
    let (code, v, _) = r.json("rsset --dim 3 --count 50 --max-simplices 30");
    ensure(code == 0 && empty(&v["failures"]), format!("exit {code}: {}", v["failures"]))?;
    let sizes = v["simplices"].as_array().cloned().unwrap_or_default();
    ensure(sizes.len() == 50, "wrong instance count")?;
    ensure(sizes.iter().all(|s| s.as_u64().is_some_and(|n| n <= 30)), "an instance has too many simplices")?;
    Ok("50 instances, N = 3".into())
}

fn dagger(r: &mut Runner) -> Verdict {
    let inv = r.run("paper-suite --case dagger");
    ensure(inv.code == 0, format!("exit {}", inv.code))?;
    let v: Value = serde_json::from_str(&inv.stdout).map_err(|e| e.to_string())?;
    ensure(v["p_isofib"] == true && v["Rp_isofib"] == false, inv.stdout.trim().to_string())?;
    Ok(inv.stdout.trim().to_string())
}

fn involutive(r: &mut Runner) -> Verdict {
    let (code, v, _) = r.json("adjoint --mode involutive");
    ensure(code == 0, format!("exit {code}: {}", v["adjunctions"]["failure"]))?;
    ensure(empty(&v["exercise"]["disagreements"]), format!("disagreements: {}", v["exercise"]["disagreements"]))?;
    Ok(format!("{} hom pairs, {} maps against the lifting oracle", v["adjunctions"]["hom_pairs"], v["exercise"]["maps_checked"]))
}

fn model(r: &mut Runner) -> Verdict {
    let (code, v, _) = r.json("rlp");
    ensure(code == 0 && empty(&v["failures"]), format!("exit {code}: {}", v["failures"]))?;
    ensure(v["skipped"] == 0, "some functor sets exceeded the budget")?;
    let functors = v["functors"].clone();
    let (code, s, _) = r.json("soa --max-stages 4");
    ensure(code == 0, format!("soa exit {code}"))?;
    let n = s["factorizations"].as_array().map_or(0, Vec::len);
    Ok(format!("{functors} functors, {n} factorizations"))
}

fn cyclic(r: &mut Runner) -> Verdict {
    let (code, v, _) = r.json("cyclic --arity-bound 3");
    ensure(code == 0 && empty(&v["failures"]), format!("exit {code}: {}", v["failures"]))?;
    ensure(v["right_adjoints"].as_array().is_some_and(|a| a.len() == 3), "expected three operads")?;
    Ok(format!("{} hom-count comparisons", v["hom_counts"].as_array().map_or(0, Vec::len)))
}

fn chain(r: &mut Runner) -> Verdict {
    let (code, v, _) = r.json("chain --p 2,5");
    ensure(code == 0, format!("exit {code}"))?;
    let fields = v["fields"].as_array().cloned().unwrap_or_default();
    ensure(fields.len() == 2, "expected two fields")?;
    for f in &fields {
        let t = &f["truncation"];
        ensure(t["acyclic_fib"] == true && t["naive_image_quasi_iso"] == false, format!("p = {}: {t}", f["p"]))?;
        ensure(empty(&f["failures"]), format!("p = {}: {}", f["p"], f["failures"]))?;
    }
    Ok("p ∈ {2, 5}".into())
}

fn determinism(r: &mut Runner) -> Verdict {
    let first: Vec<(Vec<String>, String)> = r.log.iter().map(|i| (i.args.clone(), i.stdout.clone())).collect();
    for (args, out) in &first {
        let again = r.run(&args.join(" ")).stdout.clone();
        ensure(again == *out, format!("`catlift {}` differs between runs", args.join(" ")))?;
    }
    Ok(format!("{} invocations", first.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn(&mut Runner) -> Verdict); 11] = [
        ("kan-extension adjunctions", kan),
        ("fully faithful inclusions", fully_faithful),
        ("semidirect Lan formula", semidirect),
        ("nabla presentations", nabla),
        ("real simplicial roundtrip", rsset),
        ("dagger counterexample", dagger),
        ("involutive adjunctions and cofibrations", involutive),
        ("isofibrations and factorizations", model),
        ("cyclic operads", cyclic),
        ("chain complexes", chain),
        ("determinism", determinism),
    ];
    let mut r = Runner::default();
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check(&mut r) {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

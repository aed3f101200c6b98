//! Acceptance suite: one line per criterion, then a single assertion that
//! every criterion passed. All comparisons are exact (zero tolerance).

use std::process::Command;

use hyperkernel::fixtures::{self, corpus, h9};
use hyperkernel::freeprod::{FactorRegistry, ReducedWord};
use hyperkernel::groups::{self, isomorphic, GroupTable};
use hyperkernel::quotients::{self, check_abelian_quotient, check_group_quotient};
use hyperkernel::relations::{self, beta, gamma, gamma_oracle, kernel_s};
use hyperkernel::{ElementSet, HyperTable};
use hyperkernel_cli::format::{emit_hyp, parse_hyp_file, parse_json, to_json, HypFile};
use hyperkernel_cli::run;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn labels(h: &HyperTable, s: &str) -> ElementSet {
    h.set_of(s.split(',')).expect("labels exist")
}

fn cli_json(args: &[&str]) -> Value {
    let mut argv = vec!["hyperkernel", "--json"];
    argv.extend_from_slice(args);
    let out = run(argv);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).expect("valid json")
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn criterion_1() -> Verdict {
    let h = h9();
    let b = beta(&h).map_err(|e| e.to_string())?;
    let expected: Vec<ElementSet> = ["e,a,b,c", "x,y", "z,u", "v"].iter().map(|s| labels(&h, s)).collect();
    ensure(b.classes() == expected.as_slice(), format!("classes {:?}", b.classes()))?;
    let g = relations::quotient_group_by(&h, &b).map_err(|e| e.to_string())?;
    ensure(isomorphic(&g, &groups::fixtures::v4()).unwrap(), "quotient is not V4")?;
    ensure(kernel_s(&h, &b).unwrap() == labels(&h, "e,a,b,c"), "kernel")?;
    let v = cli_json(&["beta", "h9"]);
    let want: Value = serde_json::from_str(r#"[["e","a","b","c"],["x","y"],["z","u"],["v"]]"#).unwrap();
    ensure(v["classes"] == want, "cli classes")?;
    ensure(v["kernel"] == serde_json::json!(["e", "a", "b", "c"]), "cli kernel")?;
    ensure(v["quotient_group"]["identified_as"] == "V4", "cli identification")?;
    Ok("4 classes, quotient V4, kernel {e,a,b,c}".into())
}

fn criterion_2() -> Verdict {
    // the printed 6x6 table, transcribed independently of the fixture module
    let rows: [[&str; 6]; 6] = [
        ["K", "b∘K", "x∘K", "y∘K", "z∘K", "v∘K"],
        ["b∘K", "K", "y∘K", "x∘K", "z∘K", "v∘K"],
        ["x∘K", "y∘K", "b∘K", "K", "v∘K", "z∘K"],
        ["y∘K", "x∘K", "K", "b∘K", "v∘K", "z∘K"],
        ["z∘K", "z∘K", "v∘K", "v∘K", "K,b∘K", "x∘K,y∘K"],
        ["v∘K", "v∘K", "z∘K", "z∘K", "x∘K,y∘K", "K,b∘K"],
    ];
    let v = cli_json(&["quotient", "h9", "--sub", "e,a"]);
    let names: Vec<&str> = v["quotient"]["elements"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    ensure(names == rows[0], format!("cosets {names:?}"))?;
    let cosets: Value = serde_json::from_str(r#"[["e","a"],["b","c"],["x"],["y"],["z","u"],["v"]]"#).unwrap();
    ensure(v["cosets"] == cosets, "coset members")?;
    for (i, row) in rows.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            let got: Vec<&str> = v["quotient"]["table"][i][j].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
            let want: Vec<&str> = cell.split(',').collect();
            ensure(got == want, format!("cell ({i},{j}): {got:?} vs {want:?}"))?;
        }
    }
    ensure(v["quotient_kernel_beta"] == serde_json::json!(["K", "b∘K"]), "quotient kernel")?;
    ensure(v["kernel_beta_times_sub"] == serde_json::json!(["e", "a", "b", "c"]), "S_beta∘K")?;
    ensure(v["is_group"] == false, "quotient should not be a group")?;
    let q = quotients::quotient_hypergroup(&h9(), labels(&h9(), "e,a")).unwrap();
    ensure(q.table == fixtures::h9_quotient(), "library table vs fixture")?;
    Ok("6 cosets, 36 cells, S of quotient {K, b∘K}".into())
}

fn criterion_3() -> Verdict {
    let mut small = 0;
    for (name, h) in corpus() {
        if h.n() > 5 && name != "h9" {
            continue;
        }
        let o = gamma_oracle(&h, 4, 10_000_000).map_err(|e| format!("{name}: {e}"))?;
        let g = gamma(&h).map_err(|e| format!("{name}: {e}"))?;
        ensure(o == g, format!("{name}: oracle {:?} vs {:?}", o.classes(), g.classes()))?;
        if h.n() <= 5 {
            small += 1;
        }
    }
    ensure(small >= 12, format!("only {small} small instances"))?;
    Ok(format!("{small} instances with |H| <= 5 plus h9"))
}

fn criterion_4() -> Verdict {
    let c = corpus();
    for (name, h) in &c {
        let heart = quotients::heart(h).map_err(|e| format!("{name}: {e}"))?;
        let derived = quotients::derived(h).map_err(|e| format!("{name}: {e}"))?;
        ensure(heart == kernel_s(h, &beta(h).unwrap()).unwrap(), format!("{name}: heart"))?;
        ensure(derived == kernel_s(h, &gamma(h).unwrap()).unwrap(), format!("{name}: derived"))?;
    }
    Ok(format!("{} instances", c.len()))
}

fn criterion_5() -> Verdict {
    let mut checked = 0;
    for (name, h) in corpus() {
        let lat = quotients::subhypergroups(&h).map_err(|e| e.to_string())?;
        for e in lat.entries.iter().filter(|e| e.closed) {
            let k = e.set;
            let group = check_group_quotient(&h, k).unwrap();
            let abelian = check_abelian_quotient(&h, k).unwrap();
            ensure(
                group == (e.normal && lat.s_beta.is_subset(k)),
                format!("{name} K={:?}: group quotient {group}", h.labels_of(k)),
            )?;
            ensure(
                abelian == lat.s_gamma.is_subset(k),
                format!("{name} K={:?}: abelian quotient {abelian}", h.labels_of(k)),
            )?;
            checked += 1;
        }
    }
    Ok(format!("{checked} closed subhypergroups, 0 mismatches"))
}

fn criterion_6() -> Verdict {
    let h = h9();
    let r = quotients::correspondence_check(&h, labels(&h, "e,a")).map_err(|e| e.to_string())?;
    ensure(r.passed(), "h9 with K = {e,a}")?;
    let mut others = 0;
    for (name, h) in corpus() {
        if !h.is_canonical() {
            continue;
        }
        let e = h.scalar_identity().unwrap();
        for k in quotients::subhypergroups(&h).unwrap().sets() {
            if !k.contains(e) || (name == "h9" && k == labels(&h, "e,a")) {
                continue;
            }
            let r = quotients::correspondence_check(&h, k).map_err(|err| format!("{name}: {err}"))?;
            ensure(r.passed(), format!("{name} K={:?}: {r:?}", h.labels_of(k)))?;
            others += 1;
        }
    }
    ensure(others >= 5, format!("only {others} other pairs"))?;
    Ok(format!("h9/{{e,a}} plus {others} canonical pairs, beta and gamma"))
}

fn criterion_7() -> Verdict {
    let mut checked = 0;
    for (name, h) in corpus().into_iter().filter(|(_, h)| h.n() <= 6) {
        let rels = relations::enumerate_strongly_regular(&h, 1 << 20).map_err(|e| e.to_string())?;
        // independent side: raw powerset scan with direct predicates
        let s_beta = kernel_s(&h, &beta(&h).unwrap()).unwrap();
        let subs = (1u128..1 << h.n())
            .map(ElementSet::from_bits)
            .filter(|&k| h.is_subhypergroup(k) && h.is_normal(k) && h.is_closed(k) && s_beta.is_subset(k))
            .count();
        ensure(rels.len() == subs, format!("{name}: {} relations vs {subs} subhypergroups", rels.len()))?;
        checked += 1;
    }
    Ok(format!("{checked} instances"))
}

fn criterion_8() -> Verdict {
    let z2 = HyperTable::from_group(&groups::fixtures::cyclic(2));
    let z3 = HyperTable::from_group(&groups::fixtures::cyclic(3));
    let pairs: Vec<(&str, HyperTable, HyperTable)> = vec![
        ("h9 x Z2", h9(), z2.clone()),
        ("T2 x T2", HyperTable::total(2).unwrap(), HyperTable::total(2).unwrap()),
        ("krasner x Z3", fixtures::krasner(), z3.clone()),
        ("sign x Z2", fixtures::sign(), z2.clone()),
        ("S3 x Z2", HyperTable::from_group(&groups::fixtures::s3()), z2.clone()),
        ("complete x Z2", fixtures::complete(&groups::fixtures::cyclic(2), &[1, 2]), z2.clone()),
        ("Z6/sign x krasner", fixtures::cyclic_mod_sign(6), fixtures::krasner()),
        ("V4 x T3", HyperTable::from_group(&groups::fixtures::v4()), HyperTable::total(3).unwrap()),
    ];
    for (name, a, b) in &pairs {
        let r = quotients::product_identities_check(a, b).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.kernel_ok, format!("{name}: kernel"))?;
        ensure(r.gamma_quotient_ok && r.gamma_relation_ok, format!("{name}: gamma quotient"))?;
    }
    // the h9 x Z2 quotient is witnessed against an explicitly built V4 x Z2
    let p = HyperTable::direct_product(&h9(), &z2).unwrap();
    let g = relations::quotient_group_by(&p, &gamma(&p).unwrap()).unwrap();
    let v4z2 = GroupTable::direct_product(&groups::fixtures::v4(), &groups::fixtures::cyclic(2)).unwrap();
    ensure(groups::isomorphism(&g, &v4z2).unwrap().is_some(), "h9 x Z2 witness")?;
    Ok(format!("{} product pairs", pairs.len()))
}

fn registries() -> Vec<(&'static str, FactorRegistry)> {
    let lift = HyperTable::from_group;
    vec![
        ("h9*V4", FactorRegistry::new(vec![h9(), lift(&groups::fixtures::v4())]).unwrap()),
        ("h9*S3", FactorRegistry::new(vec![h9(), lift(&groups::fixtures::s3())]).unwrap()),
        (
            "S3*V4*h9",
            FactorRegistry::new(vec![lift(&groups::fixtures::s3()), lift(&groups::fixtures::v4()), h9()]).unwrap(),
        ),
    ]
}

fn criterion_9() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut pairs, mut comms) = (0, 0);
    for (name, reg) in registries() {
        let r = reg.sample_check(&mut rng, 4, 400, 100);
        ensure(r.passed(), format!("{name}: {r:?}"))?;
        pairs += r.pairs;
        comms += r.commutator_count;
        for _ in 0..20 {
            let w = reg.random_word(&mut rng, 2);
            ensure(reg.word_inverse_unique(&w, 2, 1 << 20).unwrap(), format!("{name}: inverse of {w:?}"))?;
        }
    }
    ensure(pairs >= 1000 && comms >= 200, "sample counts")?;

    // worked example over X*Y*Z*W with X = S3, Y = Z4, Z = V4, W = Z3
    let g = FactorRegistry::from_groups(&[
        groups::fixtures::s3(),
        groups::fixtures::cyclic(4),
        groups::fixtures::v4(),
        groups::fixtures::cyclic(3),
    ])
    .unwrap();
    let w = |s: &str| g.parse_word(s).unwrap();
    let (w1, w2) = (w("s01@0 1@1"), w("p@2 1@3"));
    let one = |set: std::collections::BTreeSet<ReducedWord>| -> ReducedWord {
        assert_eq!(set.len(), 1);
        set.into_iter().next().unwrap()
    };
    let w12 = one(g.multiply(&w1, &w2));
    ensure(g.psi(&w12).unwrap().support().len() == 4, "psi(w1 w2) has full support")?;
    let w13 = one(g.multiply(&w1, &w("2@1 q@2 r@0")));
    ensure(g.display(&w13).to_string() == "s01@0 3@1 q@2 r@0", "y1 y2 merge")?;
    let w14 = one(g.multiply(&w1, &w("3@1 r@0 2@3")));
    let keys: Vec<usize> = g.psi(&w14).unwrap().support().keys().copied().collect();
    ensure(keys == [0, 3], "psi(w1 w4) support")?;
    let c = one(g.multiply_all(&[w1.clone(), w2.clone(), g.inverse_word(&w1), g.inverse_word(&w2)]));
    ensure(c.len() == 8 && g.psi(&c).unwrap().is_zero(), "psi of the commutator")?;
    Ok(format!("{pairs} triples, {comms} commutators, worked example reproduced"))
}

fn criterion_10() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for (name, reg) in registries() {
        let r = reg.polygroup_closure_check(&mut rng, 4, 500).map_err(|e| e.to_string())?;
        ensure(r.passed() && r.checked >= 500, format!("{name}: {:?}", r.failures.first()))?;
    }
    Ok("500 triples per registry".into())
}

fn criterion_11() -> Verdict {
    let commands: Vec<Vec<&str>> = vec![
        vec!["check", "h9"],
        vec!["check", "t4"],
        vec!["show", "h9-quotient"],
        vec!["show", "krasner", "--format", "json"],
        vec!["beta", "h9"],
        vec!["gamma", "s3", "--oracle", "--nmax", "3"],
        vec!["heart", "h9"],
        vec!["derived", "h9"],
        vec!["subs", "h9", "--closed", "--normal"],
        vec!["quotient", "h9", "--sub", "e,a"],
        vec!["product", "h9", "z2"],
        vec!["sr-enum", "v4"],
        vec!["freeprod", "--factors", "h9,v4", "eval", "x@0 p@1 * p@1 y@0"],
        vec!["freeprod", "--factors", "s3,z4", "psi", "r@0 1@1 s01@0"],
        vec!["freeprod", "--factors", "h9,v4", "phi", "z@0 p@1"],
        vec!["freeprod", "--factors", "h9,s3", "check", "--samples", "60"],
    ];
    let bin = env!("CARGO_BIN_EXE_hyperkernel");
    for args in &commands {
        for json in [true, false] {
            let mut argv = vec!["hyperkernel", "--seed", "5"];
            if json {
                argv.push("--json");
            }
            argv.extend(args.iter().copied());
            let a = run(argv.clone());
            let b = run(argv.clone());
            ensure(a.code == 0, format!("{args:?}: {}", a.stderr))?;
            ensure(a == b, format!("{args:?}: library runs differ"))?;
            let p1 = Command::new(bin).args(&argv[1..]).output().map_err(|e| e.to_string())?;
            let p2 = Command::new(bin).args(&argv[1..]).output().map_err(|e| e.to_string())?;
            ensure(p1.stdout == p2.stdout && p1.status == p2.status, format!("{args:?}: binary runs differ"))?;
            ensure(p1.stdout == a.stdout.as_bytes(), format!("{args:?}: binary and library differ"))?;
        }
    }
    let mut files = 0;
    for (name, table) in corpus() {
        let f = HypFile { name: Some(name.clone()), table };
        let text = emit_hyp(&f);
        ensure(parse_hyp_file(&text).as_ref() == Ok(&f), format!("{name}: hyp round trip"))?;
        ensure(emit_hyp(&parse_hyp_file(&text).unwrap()) == text, format!("{name}: re-emit"))?;
        ensure(parse_json(&to_json(&f).to_string()).as_ref() == Ok(&f), format!("{name}: json round trip"))?;
        files += 1;
    }
    Ok(format!("{} commands x 2 modes, {files} round trips", commands.len()))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        ("beta on h9", criterion_1),
        ("quotient h9/{e,a}", criterion_2),
        ("gamma oracle equivalence", criterion_3),
        ("heart and derived routes", criterion_4),
        ("group quotient theorems", criterion_5),
        ("quotient correspondence", criterion_6),
        ("strongly regular count", criterion_7),
        ("product identities", criterion_8),
        ("free product suite", criterion_9),
        ("polygroup closure", criterion_10),
        ("determinism and round trip", criterion_11),
    ];
    let mut failed = Vec::new();
    println!("tolerance: exact equality for every criterion");
    for (i, (title, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2} PASS  {title}: {detail}", i + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL  {title}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

//! End-to-end checks, one line per criterion. Runs without the libtest
//! harness so each line reports its own timing.

mod common;

use std::io::Cursor;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use comstruct::census::{generate_small_graphs, run_census, CensusRecord, CensusSource};
use comstruct::family::{enumerate_members, verify_family_no_2cs, FamilyMember};
use comstruct::named::planar_counterexample;
use comstruct::{
    are_isomorphic, check_partition, find_2cs, tree_connected_2cs, Failure, Graph, Mode, Outcome,
    Partition, SolveOptions, VertexSet, Witness,
};
use rand::Rng;

const CONNECTED8: &str = include_str!("data/connected8.g6");

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn family_relaxed_none() -> Check {
    let mut total = 0;
    let mut slowest = Duration::ZERO;
    for k in 3..=5 {
        for m in enumerate_members(k).map_err(|e| e.to_string())? {
            let t = Instant::now();
            let report = verify_family_no_2cs(&m).map_err(|e| e.to_string())?;
            slowest = slowest.max(t.elapsed());
            ensure(report.outcome == Outcome::NotFound, || {
                format!("{} has a relaxed split: {:?}", m.params, report.outcome)
            })?;
            let expected = (1u64 << (m.graph.n() - 1)) - 1;
            ensure(report.partitions_examined == expected, || {
                format!(
                    "{} examined {} of {expected}",
                    m.params, report.partitions_examined
                )
            })?;
            total += 1;
        }
    }
    ensure(slowest < Duration::from_secs(1), || {
        format!("slowest member took {slowest:?}")
    })?;
    Ok(format!(
        "{total} members for k=3..5 have none, slowest {slowest:.2?}"
    ))
}

fn minimal_count() -> Check {
    let members = enumerate_members(3).map_err(|e| e.to_string())?;
    ensure(members.len() == 4, || format!("{} members", members.len()))?;
    for (i, a) in members.iter().enumerate() {
        ensure(a.graph.n() == 10, || {
            format!("member of order {}", a.graph.n())
        })?;
        for b in &members[i + 1..] {
            ensure(!are_isomorphic(&a.graph, &b.graph).unwrap(), || {
                format!("{} and {} are isomorphic", a.params, b.params)
            })?;
        }
    }
    let planar = planar_counterexample();
    let hits = members
        .iter()
        .filter(|m| are_isomorphic(&m.graph, &planar).unwrap())
        .count();
    ensure(hits == 1, || {
        format!("{hits} members match the planar graph")
    })?;
    Ok("4 non-isomorphic order-10 members, one planar".into())
}

fn collect_census(
    source: CensusSource<'_>,
    opts: &SolveOptions,
    workers: usize,
) -> Result<(Vec<CensusRecord>, String), String> {
    let mut records = Vec::new();
    let summary = run_census(source, opts, workers, |r| {
        records.push(r.clone());
        Ok(())
    })
    .map_err(|e| e.to_string())?;
    Ok((records, serde_json::to_string(&summary).unwrap()))
}

fn small_census() -> Check {
    let t = Instant::now();
    let orders: Vec<usize> = (1..=7).collect();
    let (records, _) = collect_census(
        CensusSource::Generate { orders },
        &SolveOptions::relaxed().connected(),
        1,
    )?;
    let elapsed = t.elapsed();
    let expected = [1, 1, 2, 6, 21, 112, 853];
    for (n, want) in (1..=7).zip(expected) {
        let got = records.iter().filter(|r| r.n == n).count();
        ensure(got == want, || {
            format!("order {n}: {got} graphs, expected {want}")
        })?;
    }
    let lacking: Vec<&CensusRecord> = records
        .iter()
        .filter(|r| r.n >= 2 && !r.has_connected_relaxed_2cs)
        .collect();
    ensure(lacking.is_empty(), || {
        format!("{} graphs lack a connected relaxed split", lacking.len())
    })?;
    for n in 3..=7 {
        let star = Graph::star(n - 1).unwrap();
        let rec = records
            .iter()
            .filter(|r| r.n == n)
            .find(|r| {
                are_isomorphic(
                    &comstruct::parse_graph6(r.graph6.as_deref().unwrap()).unwrap(),
                    &star,
                )
                .unwrap()
            })
            .ok_or_else(|| format!("no star among order {n}"))?;
        ensure(!rec.has_strict_2cs, || {
            format!("star of order {n} has a strict split")
        })?;
    }
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{} graphs, none lacking, stars lack strict, {elapsed:.2?} on 1 worker",
        records.len()
    ))
}

fn planar_member() -> Result<FamilyMember, String> {
    let planar = planar_counterexample();
    enumerate_members(3)
        .map_err(|e| e.to_string())?
        .into_iter()
        .find(|m| are_isomorphic(&m.graph, &planar).unwrap())
        .ok_or_else(|| "no planar member".into())
}

fn named_split_witnesses() -> Check {
    let m = planar_member()?;
    let g = &m.graph;
    let lay = m.layout();
    let report = verify_family_no_2cs(&m).map_err(|e| e.to_string())?;
    let witness = |i: usize| -> Result<Witness, String> {
        match &report.cases[i].verdict {
            comstruct::Verdict::Invalid(Failure::Unsatisfied(w)) => Ok(*w),
            other => Err(format!("{}: {other:?}", report.cases[i].label)),
        }
    };
    let (nx, ny) = (g.neighbors(lay.x()), g.neighbors(lay.y()));
    let cliques = lay.w1().union(lay.w2());

    // B = {x,y,z}: a vertex of W1 ∪ W2 seeing both x and y
    let w = witness(0)?;
    ensure(
        cliques.contains(w.vertex) && nx.contains(w.vertex) && ny.contains(w.vertex),
        || format!("{{x,y,z}} witness {} is not beta", w.vertex),
    )?;
    ensure((w.lhs, w.rhs) == (9, 12), || {
        format!("{{x,y,z}} sides {}/{}", w.lhs, w.rhs)
    })?;

    // B = {y,z}: a vertex seeing y but not x
    let w = witness(1)?;
    ensure(
        cliques.contains(w.vertex) && !nx.contains(w.vertex) && ny.contains(w.vertex),
        || format!("{{y,z}} witness {} is not alpha", w.vertex),
    )?;
    ensure((w.lhs, w.rhs) == (6, 7), || {
        format!("{{y,z}} sides {}/{}", w.lhs, w.rhs)
    })?;

    let w = witness(2)?;
    ensure(w.vertex == lay.y() && (w.lhs, w.rhs) == (15, 16), || {
        format!("{{y,z}}+W2 witness {w:?}")
    })?;

    let w = witness(3)?;
    let b = report.cases[3].b;
    let a = g.vertices().difference(b);
    ensure(w.vertex == lay.x(), || {
        format!("{{x,y,z}}+W2 witness {w:?}")
    })?;
    ensure(g.degree_in(lay.x(), a) == g.degree_in(lay.x(), b), || {
        "{x,y,z}+W2: degrees of x differ".into()
    })?;
    ensure(b.len() == a.len() + 2, || {
        format!("{{x,y,z}}+W2 sizes {}/{}", b.len(), a.len())
    })?;
    ensure(w.lhs < w.rhs, || "{x,y,z}+W2: x is satisfied".into())?;
    Ok(format!("9<12, 6<7, 15<16, and x with {}<{}", w.lhs, w.rhs))
}

fn oracle_equivalence() -> Check {
    let mut graphs = 0;
    for n in 2..=7 {
        for g in generate_small_graphs(n).map_err(|e| e.to_string())? {
            let naive = common::naive_flags(&g);
            let variants = [
                ("strict", SolveOptions::strict(), naive.strict),
                ("relaxed", SolveOptions::relaxed(), naive.relaxed),
                (
                    "connected strict",
                    SolveOptions::strict().connected(),
                    naive.connected_strict,
                ),
                (
                    "connected relaxed",
                    SolveOptions::relaxed().connected(),
                    naive.connected_relaxed,
                ),
            ];
            for (name, opts, want) in variants {
                let got = find_2cs(&g, &opts)
                    .map_err(|e| e.to_string())?
                    .found()
                    .is_some();
                ensure(got == want, || {
                    format!("{name} disagrees on {:?}", g.edges())
                })?;
            }
            graphs += 1;
        }
    }
    Ok(format!("{graphs} connected graphs, four flags each"))
}

fn compare_tree(g: &Graph) -> Result<(), String> {
    let fast = tree_connected_2cs(g).map_err(|e| e.to_string())?;
    let slow = find_2cs(g, &SolveOptions::strict().connected()).map_err(|e| e.to_string())?;
    ensure(fast.found().is_some() == slow.found().is_some(), || {
        format!(
            "tree {:?}: {:?} vs {:?}",
            g.edges(),
            fast.outcome,
            slow.outcome
        )
    })?;
    if let Some(bp) = fast.found() {
        let v = check_partition(g, &bp.to_partition(), Mode::Strict, true).unwrap();
        ensure(v.is_valid(), || {
            format!("tree {:?}: returned split is invalid", g.edges())
        })?;
    }
    Ok(())
}

fn trees() -> Check {
    let mut exhaustive = 0;
    for n in 3..=8usize {
        let len = n - 2;
        let mut seq = vec![0; len];
        loop {
            compare_tree(&common::prufer_tree(n, &seq))?;
            exhaustive += 1;
            // odometer over Prüfer sequences
            let mut i = 0;
            while i < len && seq[i] == n - 1 {
                seq[i] = 0;
                i += 1;
            }
            if i == len {
                break;
            }
            seq[i] += 1;
        }
    }
    let mut rng = common::rng(0x7ee5);
    for _ in 0..10_000 {
        let n = rng.gen_range(3..=9);
        compare_tree(&common::random_tree(&mut rng, n))?;
    }
    Ok(format!(
        "{exhaustive} labeled trees n=3..8 plus 10000 random n=3..9"
    ))
}

fn strict_relaxed_agree() -> Check {
    let mut rng = common::rng(0x5eed);
    for i in 0..10_000 {
        let n = rng.gen_range(4..=16);
        let k = rng.gen_range(2..=(n / 2).min(5));
        let density = rng.gen_range(0.1..0.9);
        let g = common::random_graph(&mut rng, n, density);
        // two vertices per part first, the rest at random
        let order = common::random_permutation(&mut rng, n);
        let mut parts = vec![VertexSet::EMPTY; k];
        for (idx, &v) in order.iter().enumerate() {
            let part = if idx < 2 * k {
                idx / 2
            } else {
                rng.gen_range(0..k)
            };
            parts[part].insert(v);
        }
        let p = Partition::new(n, parts).map_err(|e| e.to_string())?;
        let connected = rng.gen_bool(0.5);
        let s = check_partition(&g, &p, Mode::Strict, connected).unwrap();
        let r = check_partition(&g, &p, Mode::Relaxed, connected).unwrap();
        ensure(s == r, || {
            format!("pair {i}: {s:?} vs {r:?} on {:?} with {p}", g.edges())
        })?;
    }
    Ok("10000 random pairs agree".into())
}

fn parallel_census() -> Check {
    let opts = SolveOptions::relaxed().connected();
    let run = |workers: usize| -> Result<(String, String, Duration), String> {
        let t = Instant::now();
        let mut out = Vec::new();
        let summary = run_census(
            CensusSource::Graph6 {
                name: "connected8.g6".into(),
                reader: Box::new(Cursor::new(CONNECTED8)),
            },
            &opts,
            workers,
            |r| {
                serde_json::to_writer(&mut out, r)?;
                out.push(b'\n');
                Ok(())
            },
        )
        .map_err(|e| e.to_string())?;
        let elapsed = t.elapsed();
        Ok((
            String::from_utf8(out).unwrap(),
            serde_json::to_string_pretty(&summary).unwrap(),
            elapsed,
        ))
    };
    let (out4, sum4, t4) = run(4)?;
    let (out1, sum1, t1) = run(1)?;
    let graphs = out4.lines().count();
    ensure(graphs == 11_117, || format!("{graphs} records"))?;
    ensure(out4 == out1, || {
        "records differ between 1 and 4 workers".into()
    })?;
    ensure(sum4 == sum1, || {
        "summaries differ between 1 and 4 workers".into()
    })?;
    ensure(t4 < Duration::from_secs(10), || {
        format!("4 workers took {t4:?}")
    })?;
    Ok(format!(
        "{graphs} graphs in {t4:.2?} on 4 workers ({t1:.2?} on 1), identical output"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("family members have no relaxed split", family_relaxed_none),
        ("four minimal members", minimal_count),
        ("small-order census", small_census),
        ("named split witnesses", named_split_witnesses),
        ("solver matches naive scan", oracle_equivalence),
        ("tree algorithm matches exhaustive search", trees),
        (
            "strict equals relaxed without singletons",
            strict_relaxed_agree,
        ),
        ("parallel census of order 8", parallel_census),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = check();
        let elapsed = t.elapsed();
        match result {
            Ok(detail) => println!("PASS {}. {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

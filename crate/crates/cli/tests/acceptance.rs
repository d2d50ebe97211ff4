//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! fails.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use hst_chop::multiedge_modify;
use hst_cli::{check, chop, ends, load_scenario, ProbeFlags, EXIT_OK};
use hst_graph::{bruteforce_min_separating, end_probe, min_vertex_set_cut, BallGraph, Cut, GraphError};
use hst_groups::{CayleyGraph, MarkedGroup};
use hst_pocset::{canonical_tree_code, cube, random_tree, tree_halfspace_pocset, Pocset};
use hst_splitting::{affine, cayley_window, halfspace_window, HalfSide, SplitError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn tree_round_trip() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut slowest = Duration::ZERO;
    let mut ok = 0;
    for i in 0..100 {
        let edges = rng.gen_range(1..=60);
        let tree = random_tree(&mut rng, edges);
        let start = Instant::now();
        let (pocset, _) = tree_halfspace_pocset(&tree).map_err(|e| e.to_string())?;
        let skeleton = cube(&pocset, None).map_err(|e| e.to_string())?;
        let back = skeleton.to_graph().map_err(|e| e.to_string())?;
        let same = canonical_tree_code(&back).map_err(|e| e.to_string())?
            == canonical_tree_code(&tree).map_err(|e| e.to_string())?;
        slowest = slowest.max(start.elapsed());
        if same {
            ok += 1;
        } else {
            return Err(format!("tree {i} with {edges} edges came back different"));
        }
    }
    ensure(slowest < Duration::from_secs(1), format!("slowest tree took {slowest:?}"))?;
    Ok(format!("{ok}/100 trees recovered, slowest {:.3} s", slowest.as_secs_f64()))
}

fn cubing_dimension() -> Verdict {
    let mut seen = Vec::new();
    for k in 1..=4usize {
        let names = (0..k).flat_map(|i| [format!("h{i}"), format!("h{i}*")]).collect();
        let star = (0..2 * k).map(|a| a ^ 1).collect();
        let pocset = Pocset::new(names, star, &[], false).map_err(|e| e.to_string())?;
        let skeleton = cube(&pocset, None).map_err(|e| e.to_string())?;
        let (n, d) = (skeleton.len(), skeleton.cube_dimension());
        ensure(n == 1 << k && d == k, format!("k = {k}: {n} ultrafilters, dimension {d}"))?;
        seen.push(format!("{n}"));
    }
    Ok(format!("ultrafilters {} for k = 1..4, dimension k", seen.join("/")))
}

fn random_multigraph(rng: &mut ChaCha8Rng, n: usize) -> BallGraph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v, rng.gen_range(1..=3)));
    }
    for _ in 0..rng.gen_range(0..=2 * n) {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v {
            edges.push((u, v, rng.gen_range(1..=2)));
        }
    }
    hst_graph::samples::finite_graph(n, &edges).expect("random multigraph is valid")
}

fn mincut_oracle() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let start = Instant::now();
    for i in 0..200 {
        let n = rng.gen_range(2..=10);
        let g = random_multigraph(&mut rng, n);
        let s = rng.gen_range(0..n);
        let t = (s + rng.gen_range(1..n)) % n;
        let flow = min_vertex_set_cut(&g, &[s], &[t]).map_err(|e| e.to_string())?.size();
        let brute = bruteforce_min_separating(&g, s, t).map_err(|e| e.to_string())?;
        ensure(brute == Some(flow), format!("graph {i}: flow {flow}, exhaustive {brute:?}"))?;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(10), format!("took {took:?}"))?;
    Ok(format!("200/200 graphs agree in {:.2} s", took.as_secs_f64()))
}

fn bs12_normal_forms() -> Verdict {
    let split = affine::bs_splitting(2).map_err(|e| e.to_string())?;
    let ball = cayley_window(&split, &split.identity(), 5, None).map_err(|e| e.to_string())?;
    let oracle = affine::affine_ball(2, 5);
    let mut images = HashSet::new();
    for (v, g) in ball.points.iter().enumerate() {
        let m = affine::evaluate(&split, 2, g);
        ensure(images.insert(m), format!("{} collides with another normal form", split.label(g)))?;
        ensure(
            oracle.get(&m) == Some(&ball.graph.dist(v)),
            format!("{} has no matching matrix at distance {}", split.label(g), ball.graph.dist(v)),
        )?;
    }
    ensure(images.len() == oracle.len(), format!("{} normal forms, {} matrices", images.len(), oracle.len()))?;
    Ok(format!("{} normal forms match {} matrices", images.len(), oracle.len()))
}

fn end_counts() -> Verdict {
    let cases = [
        ("Z", MarkedGroup::free_abelian(&["x"]), 2),
        ("Z^2", MarkedGroup::free_abelian(&["x", "y"]), 1),
        ("F2", MarkedGroup::free(&["a", "b"]), 12),
    ];
    let mut out = Vec::new();
    for (name, group, expected) in cases {
        let cayley = CayleyGraph::standard(&group);
        for big_r in [4, 5] {
            let r = end_probe(&cayley, &cayley.identity(), 1, big_r, None).map_err(|e| e.to_string())?;
            ensure(
                r.unbounded_count == expected && r.stable,
                format!("{name} at R = {big_r}: {}", r.summary()),
            )?;
        }
        out.push(format!("{name} {expected}"));
    }
    Ok(format!("{}, stable at R = 4 and 5", out.join(", ")))
}

fn surface_windows() -> Verdict {
    const BUDGET: usize = 100_000;
    let s = load_scenario(&fixture("surface_genus2.scn")).map_err(|e| e.to_string())?;
    let split = s.splitting().expect("fixture has a splitting").map_err(|e| e.to_string())?;
    // Stability compares R with R - 1, and at r = 1 the annulus for R - 1 = 2
    // is a single layer, so the sweep starts at R = 4.
    const FIRST: u32 = 4;
    let mut last = 0;
    for big_r in FIRST.. {
        let mut reports = Vec::new();
        for side in [HalfSide::Left, HalfSide::Right] {
            match halfspace_window(split, &split.identity(), side, big_r, Some(BUDGET)) {
                Ok(ball) => reports.push(ball.ends(1, None).map_err(|e| e.to_string())?),
                Err(SplitError::Graph(GraphError::Budget { .. })) => break,
                Err(e) => return Err(e.to_string()),
            }
        }
        if reports.len() < 2 {
            break;
        }
        for r in &reports {
            ensure(r.unbounded_count == 1 && r.stable, format!("R = {big_r}: {}", r.summary()))?;
        }
        last = big_r;
    }
    ensure(last >= FIRST, format!("R = {FIRST} already exceeds the budget"))?;
    Ok(format!("both sides 1 unbounded component (stable) for R = {FIRST}..{last}; R = {} exceeds {BUDGET} vertices", last + 1))
}

fn artificial_halfspace() -> Verdict {
    let s = load_scenario(&fixture("example71.scn")).map_err(|e| e.to_string())?;
    let flags = ProbeFlags { side: Some("left".into()), ..ProbeFlags::default() };
    let out = ends(&s, &flags).map_err(|e| e.to_string())?;
    let n = out.json["report"]["unbounded_count"].as_u64().unwrap_or(0);
    let stable = out.json["report"]["stable"].as_bool().unwrap_or(false);
    ensure(n >= 2 && stable, format!("left halfspace: {n} unbounded components, stable = {stable}"))?;
    Ok(format!("left halfspace: {n} unbounded components (stable)"))
}

fn chop_pipeline() -> Verdict {
    let s = load_scenario(&fixture("example71.scn")).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let out = chop(&s, &ProbeFlags::default()).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    let doc: &Value = &out.json;
    ensure(out.code == EXIT_OK, format!("exit code {}", out.code))?;
    let rounds = doc["rounds"].as_array().cloned().unwrap_or_default();
    let first = rounds.first().ok_or("no rounds")?;
    ensure(first["outcome"]["kind"] == "chopped", format!("round 1 outcome {}", first["outcome"]))?;
    let failed: Vec<&str> = first["checks"]
        .as_array()
        .into_iter()
        .flatten()
        .filter(|c| c["pass"] != true)
        .filter_map(|c| c["name"].as_str())
        .collect();
    ensure(failed.is_empty(), format!("failed checks: {}", failed.join("; ")))?;
    let refined = &first["refined"];
    ensure(refined["transverse_pairs"] == 0, format!("{} transverse pairs", refined["transverse_pairs"]))?;
    let (v, e) = (refined["vertices"].as_u64().unwrap_or(0), refined["edges"].as_u64().unwrap_or(0));
    ensure(v == e + 1, format!("refined tree has {v} vertices and {e} edges"))?;
    let last = rounds.last().expect("nonempty");
    ensure(doc["terminated"] == true && last["outcome"]["kind"] == "one-ended", "final windows are not one-ended")?;
    for p in last["probes"].as_array().into_iter().flatten() {
        ensure(p["ends"]["unbounded_count"] == 1 && p["ends"]["stable"] == true, format!("final probe {}", p["ends"]))?;
    }
    ensure(took < Duration::from_secs(300), format!("took {took:?}"))?;
    let checks = first["checks"].as_array().map_or(0, Vec::len);
    Ok(format!(
        "{} rounds, {checks}/{checks} checks, refined tree {v} vertices, 0 transverse pairs, {:.1} s",
        rounds.len(),
        took.as_secs_f64()
    ))
}

fn multiedge_bookkeeping() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut checked = 0;
    for i in 0..50 {
        let n = rng.gen_range(3..=12);
        let mut g = random_multigraph(&mut rng, n);
        g.set_wall((0..n).map(|_| rng.gen_bool(0.5)).collect()).map_err(|e| e.to_string())?;
        let mask: Vec<bool> = loop {
            let m: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
            if m.iter().any(|&x| x) && !m.iter().all(|&x| x) {
                break m;
            }
        };
        let stored = Cut::from_mask(&g, &mask);
        for mult in 2..=4u32 {
            let (scaled, cuts) = multiedge_modify(&g, mult, std::slice::from_ref(&stored)).map_err(|e| e.to_string())?;
            // Recount the boundary directly in the scaled window.
            let recount: u32 = (0..n)
                .filter(|&u| mask[u])
                .flat_map(|u| scaled.neighbors(u).iter().filter(|(v, _)| !mask[*v]).map(|&(_, m)| m))
                .sum();
            let expected = stored.size() + (mult - 1) * stored.wall_weight;
            ensure(
                recount == expected && cuts[0].size() == expected,
                format!("cut {i}, n = {mult}: {recount} / {} vs {expected}", cuts[0].size()),
            )?;
            checked += 1;
        }
    }
    Ok(format!("{checked}/150 (cut, n) pairs satisfy |δC| + (n-1)W"))
}

fn pattern_checks() -> Verdict {
    let run = |f: &str| -> Result<Value, String> {
        let s = load_scenario(&fixture(f)).map_err(|e| e.to_string())?;
        Ok(check(&s, &ProbeFlags::default()).map_err(|e| e.to_string())?.json)
    };
    let cited = |doc: &Value| {
        doc["report"]["conclusions"]
            .as_array()
            .is_some_and(|c| !c.is_empty() && c.iter().all(|x| x.as_str().is_some_and(|s| s.contains("[cited:"))))
    };
    let central = run("example83.scn")?;
    ensure(central["report"]["central_stable"]["matched"] == true && cited(&central), "example83 does not match")?;
    let double = run("example84.scn")?;
    ensure(double["report"]["double"]["matched"] == true && cited(&double), "example84 does not match")?;
    let surface = run("surface_genus2.scn")?;
    let neither = surface["report"]["central_stable"]["matched"] == false
        && surface["report"]["double"]["matched"] == false
        && surface["report"]["conclusions"].as_array().is_some_and(Vec::is_empty);
    ensure(neither, "surface fixture matches a pattern")?;
    Ok("example83 central stable letter, example84 double, surface neither".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("tree round-trip through cubing", tree_round_trip),
        ("cubing dimension of independent pairs", cubing_dimension),
        ("min-cut matches exhaustive search", mincut_oracle),
        ("BS(1,2) normal forms match affine maps", bs12_normal_forms),
        ("end probes of Z, Z^2 and F2", end_counts),
        ("genus-two surface halfspaces are one-ended", surface_windows),
        ("artificial halfspace is multi-ended", artificial_halfspace),
        ("chop pipeline on the artificial splitting", chop_pipeline),
        ("multi-edge bookkeeping", multiedge_bookkeeping),
        ("structural pattern checks", pattern_checks),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("{}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

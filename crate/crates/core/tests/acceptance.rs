//! End-to-end acceptance runs. Each test prints one `PASS`/`FAIL` line with
//! its runtime, written straight to stdout so it shows without `--nocapture`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::io::Write;
use std::path::Path;
use std::time::{Duration, Instant};

use horofunc::annihilator::{annihilator_candidates, functional_annihilator, DEFAULT_GAP};
use horofunc::boundary::{
    bend_scan, boundary_approx, index_estimate, interval_monotonicity, kernel_approx, sign_match, slow_geodesic,
};
use horofunc::catalog;
use horofunc::cayley::Ball;
use horofunc::cli::{emit_report, run_command, Command};
use horofunc::config::{parse_spec, RunConfig};
use horofunc::convex::{q, Q};
use horofunc::metrics::{bs_annihilator_check, build_ball_system, lamp_chain, metric_axiom_check};
use horofunc::vabelian::{
    infinite_boundary_witness, lipschitz_hom, polytope_of, step1_membership, ExtremeSelector,
};
use horofunc::{Element, GeneratingSet, Group};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(id: u32, name: &str, pass: bool, elapsed: Duration, limit: Option<u64>, detail: &str) {
    let within = limit.is_none_or(|l| elapsed.as_secs_f64() < l as f64);
    let verdict = if pass && within { "PASS" } else { "FAIL" };
    let limit = limit.map_or(String::new(), |l| format!(" (limit {l}s)"));
    let line = format!(
        "criterion {id:>2} {verdict} {name}: {detail} [{:.2}s{limit}]\n",
        elapsed.as_secs_f64()
    );
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
    assert!(pass && within, "{}", line.trim_end());
}

/// Word norms by a plain breadth-first search, independent of `Ball`.
fn oracle_norms(g: &Group, s: &GeneratingSet, radius: u32) -> HashMap<Element, u32> {
    let mut dist = HashMap::new();
    dist.insert(g.identity(), 0);
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        if d == radius {
            continue;
        }
        for t in s.elements() {
            let y = g.mul(&x, t);
            if !dist.contains_key(&y) {
                dist.insert(y.clone(), d + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

fn ab(v: &[i64]) -> Element {
    Element::Abelian(v.to_vec())
}

fn coords(x: &Element) -> &[i64] {
    match x {
        Element::Abelian(v) => v,
        other => panic!("not abelian: {other}"),
    }
}

#[test]
fn c01_cylinder_distance_law() {
    let t = Instant::now();
    let (g, s) = catalog::cylinder(4);
    let ball = Ball::grow(&g, &s, 20).unwrap();
    let oracle = oracle_norms(&g, &s, 20);
    let inner: Vec<Element> = ball.elements()[..ball.count_within(10)].to_vec();
    let (mut pairs, mut violations) = (0, 0);
    for x in &inner {
        for y in &inner {
            let dx = (coords(x)[0] - coords(y)[0]).abs();
            if dx < 3 {
                continue;
            }
            pairs += 1;
            let d = ball.distance(x, y).unwrap();
            let o = oracle[&g.mul(&g.inverse(x), y)];
            if i64::from(d) != dx || d != o {
                violations += 1;
            }
        }
    }
    report(
        1,
        "cylinder distance law",
        violations == 0 && pairs > 0,
        t.elapsed(),
        Some(5),
        &format!("{pairs} pairs with |x-x'| >= 3, {violations} violations"),
    );
}

#[test]
fn c02_cylinder_annihilator() {
    let t = Instant::now();
    let mut details = Vec::new();
    let mut pass = true;
    for (n, m) in [(4usize, 3u32), (3, 3), (5, 3), (6, 4)] {
        let (g, s) = catalog::cylinder(n as i64);
        let ball = Ball::grow(&g, &s, 12 + m).unwrap();
        let rep = annihilator_candidates(&ball, m, 12, DEFAULT_GAP).unwrap();
        let got: HashSet<Element> = rep.candidates.iter().cloned().collect();
        let want: HashSet<Element> = (0..n as i64).map(|y| ab(&[0, y])).collect();
        let index = g.quotient_order().unwrap();
        pass &= got == want && rep.candidates.len() == index;
        details.push(format!("n={n}: {} of [G:Z]={index}", rep.candidates.len()));
    }
    report(2, "cylinder annihilator", pass, t.elapsed(), Some(30), &details.join(", "));
}

#[test]
fn c03_fsf_example() {
    let t = Instant::now();
    let (g, s) = catalog::fsf();
    let ball = Ball::grow(&g, &s, 12).unwrap();
    let rep = annihilator_candidates(&ball, 2, 10, DEFAULT_GAP).unwrap();
    let f = catalog::fsf_subgroup();
    let missing: Vec<&Element> = f.iter().filter(|x| !rep.candidates.contains(x)).collect();
    report(
        3,
        "F S1 F annihilator contains F",
        missing.is_empty(),
        t.elapsed(),
        Some(10),
        &format!("{} candidates, {} of F missing", rep.candidates.len(), missing.len()),
    );
}

#[test]
fn c04_boundary_finiteness_contrast() {
    let t = Instant::now();
    let (g, s) = catalog::line();
    let ball = Ball::grow(&g, &s, 15).unwrap();
    let line_counts: Vec<usize> = (6..=12)
        .map(|r| boundary_approx(&ball, r, 3).unwrap().stable_count())
        .collect();
    let (g, s) = catalog::z2_standard();
    let ball = Ball::grow(&g, &s, 12).unwrap();
    let at4 = boundary_approx(&ball, 4, 2).unwrap().stable_count();
    let at10 = boundary_approx(&ball, 10, 2).unwrap().stable_count();
    report(
        4,
        "boundary finiteness contrast",
        line_counts.iter().all(|&c| c == 2) && at10 > at4,
        t.elapsed(),
        Some(60),
        &format!("Z stable counts r=6..12 {line_counts:?}; Z^2 stable count r=4: {at4}, r=10: {at10}"),
    );
}

#[test]
fn c05_annihilator_coincidence() {
    let t = Instant::now();
    let mut pass = true;
    let mut details = Vec::new();
    let cases = [
        ("Z", catalog::line(), 12, 3),
        ("Z^2", catalog::z2_standard(), 10, 2),
        ("ZxZ/4", catalog::cylinder(4), 12, 3),
    ];
    for (name, (g, s), r, m) in cases {
        let ball = Ball::grow(&g, &s, r + m).unwrap();
        let approx = boundary_approx(&ball, r, m).unwrap();
        let fa = functional_annihilator(&approx, &ball, m).unwrap();
        let a: HashSet<&Element> = fa.boundary_side.iter().collect();
        let b: HashSet<&Element> = fa.busemann_side.iter().collect();
        pass &= fa.coincide && a == b;
        details.push(format!("{name}: {} = {}", a.len(), b.len()));
    }
    report(5, "annihilator coincidence", pass, t.elapsed(), None, &details.join(", "));
}

#[test]
fn c06_interval_monotonicity() {
    let t = Instant::now();
    let groups = [
        ("Z", catalog::line()),
        ("Z^2", catalog::z2_standard()),
        ("ZxZ/4", catalog::cylinder(4)),
        ("FS1F", catalog::fsf()),
        ("p4", catalog::p4()),
        ("lamplighter", catalog::lamplighter()),
    ];
    let mut total = 0usize;
    let mut violations = 0usize;
    let mut library_violations = 0usize;
    for (i, (_, (g, s))) in groups.iter().enumerate() {
        let norms = oracle_norms(g, s, 12);
        let mut pool: Vec<&Element> = norms.iter().filter(|(_, &d)| d <= 8).map(|(x, _)| x).collect();
        pool.sort();
        let domain: Vec<&Element> = norms.iter().filter(|(_, &d)| d <= 4).map(|(x, _)| x).collect();
        let b = |z: &Element, x: &Element| -> i64 {
            i64::from(norms[&g.mul(&g.inverse(z), x)]) - i64::from(norms[z])
        };
        let mut rng = ChaCha8Rng::seed_from_u64(100 + i as u64);
        for _ in 0..200 {
            let y = pool[rng.gen_range(0..pool.len())];
            let ny = norms[y];
            // A missing norm exceeds 12 > |y|, so that z is off the segment.
            let on_segment = |z: &&&Element| norms.get(&g.mul(&g.inverse(z), y)).map(|d| norms[**z] + d) == Some(ny);
            for z in pool.iter().filter(on_segment) {
                for x in &domain {
                    total += 1;
                    if b(z, x) < b(y, x) {
                        violations += 1;
                    }
                }
            }
        }
        let ball = Ball::grow(g, s, 12).unwrap();
        library_violations += interval_monotonicity(&ball, 200, 8, 4, 7).unwrap().violations.len();
    }
    report(
        6,
        "interval monotonicity",
        violations == 0 && library_violations == 0,
        t.elapsed(),
        None,
        &format!("6 groups x 200 samples, {total} comparisons, {violations} violations ({library_violations} in library run)"),
    );
}

#[test]
fn c07_sign_proportionality() {
    let t = Instant::now();
    let (g, s) = catalog::cylinder(4);
    let ball = Ball::grow(&g, &s, 18).unwrap();
    let approx = boundary_approx(&ball, 12, 3).unwrap();
    let stable: Vec<usize> = approx.tracked_indices();
    let kernel = kernel_approx(&approx, 2, &ball).unwrap();
    let index = index_estimate(&approx, &ball).unwrap();
    let (h0, h1) = (
        &approx.classes[stable[0]].functional,
        &approx.classes[stable[1]].functional,
    );
    let sm = sign_match(h0, h1, &kernel, &ball).unwrap();
    let pass = stable.len() == 2
        && sm.q.abs() == 1
        && sm.kernel_deviation == 0
        && sm.full_deviation <= 2 * index.value() as i64;
    report(
        7,
        "sign proportionality",
        pass,
        t.elapsed(),
        None,
        &format!(
            "{} classes, q={}, K-deviation {}, full deviation {} <= 2[G:K]={}",
            stable.len(),
            sm.q,
            sm.kernel_deviation,
            sm.full_deviation,
            2 * index.value()
        ),
    );
}

#[test]
fn c08_polytope_pipeline() {
    let t = Instant::now();
    let (g, s) = catalog::z2_standard();
    let (view, _, cycles, cloud, p) = polytope_of(&g, &s, 3).unwrap();
    let mut labels: Vec<Element> = cycles.labels.iter().map(|l| l.element.clone()).collect();
    labels.sort();
    let mut want = vec![ab(&[1, 0]), ab(&[-1, 0]), ab(&[0, 1]), ab(&[0, -1])];
    want.sort();
    let mut pass = labels == want && p.vertices.len() == 4;

    // Oracle: the cross-polytope is |a| + |b| <= 1 and |(a,b)| = |a| + |b|.
    let oracle = oracle_norms(&g, &s, 8);
    let ball8 = Ball::grow(&g, &s, 8).unwrap();
    let step1 = step1_membership(&p, &view, &ball8, 8).unwrap();
    pass &= step1.violations.is_empty() && step1.checked == oracle.len() - 1;
    for (x, &n) in &oracle {
        let c = coords(x);
        pass &= c[0].abs() + c[1].abs() == i64::from(n);
        if n > 0 {
            let ratio: Vec<Q> = c.iter().map(|&v| horofunc::convex::ratio(v, i64::from(n))).collect();
            pass &= p.contains(&ratio);
        }
    }

    let e = vec![q(1), q(0)];
    let data = lipschitz_hom(&p, &cloud, &ExtremeSelector::Point(e), &view, &ball8).unwrap();
    let locus_ok = data.equality_locus.iter().all(|y| coords(y)[1] == 0 && coords(y)[0] >= 0);
    let fp = data.eval(&view, data.period());
    pass &= locus_ok && data.power == 1 && fp == q(i64::from(oracle[data.period()]));

    let rep = infinite_boundary_witness(&g, &s, 5, 14, 2, &ExtremeSelector::Index(3), 3).unwrap();
    // Oracle restrictions: b_y(x) = |x - y|_1 - |y|_1 on B_2.
    let domain: Vec<&Element> = oracle.iter().filter(|(_, &d)| d <= 2).map(|(x, _)| x).collect();
    let restrictions: HashSet<Vec<i64>> = rep
        .witnesses
        .iter()
        .map(|w| {
            let y = coords(&w.endpoint);
            let mut v: Vec<(Element, i64)> = domain
                .iter()
                .map(|x| {
                    let c = coords(x);
                    let d = (c[0] - y[0]).abs() + (c[1] - y[1]).abs() - y[0].abs() - y[1].abs();
                    ((*x).clone(), d)
                })
                .collect();
            v.sort();
            v.into_iter().map(|(_, d)| d).collect()
        })
        .collect();
    pass &= rep.complete() && rep.witnesses.len() == 5 && restrictions.len() == 5;
    report(
        8,
        "polytope pipeline on Z^2",
        pass,
        t.elapsed(),
        Some(60),
        &format!(
            "|C|={}, {} extreme points, step1 {} points, f={}, p={}, {} distinct witnesses",
            labels.len(),
            p.vertices.len(),
            step1.checked,
            rep.homomorphism.functional,
            data.power,
            restrictions.len()
        ),
    );
}

#[test]
fn c09_slow_geodesic_bound() {
    let t = Instant::now();
    let (g, s) = catalog::cylinder_diagonal(30);
    let ball = Ball::grow(&g, &s, 94).unwrap();
    let approx = boundary_approx(&ball, 64, 30).unwrap();
    let x = ab(&[0, 15]);
    let sg = slow_geodesic(&x, 2, 8, &ball, &approx).unwrap();
    let alpha = ball.geodesic_between(&g.identity(), &x).unwrap();
    let mut max_jump = 0;
    for c in approx.converged() {
        let scan = bend_scan(&alpha, 2, &c.functional, &ball).unwrap();
        for w in scan.phi.windows(2) {
            max_jump = max_jump.max((w[1] - w[0]).abs());
        }
    }
    let stable_ok = approx.stable().count() == sg.values.len();
    let bound_ok = sg.bound == 7 && sg.values.iter().all(|(_, v)| v.abs() <= 7);
    report(
        9,
        "slow geodesic bound",
        stable_ok && bound_ok && max_jump <= 2 && sg.beta.len() == 8,
        t.elapsed(),
        Some(120),
        &format!(
            "[G:K]={}, h(beta_2) = {:?}, bound {}, max phi jump {max_jump}",
            sg.index.value(),
            sg.values.iter().map(|(_, v)| *v).collect::<Vec<_>>(),
            sg.bound
        ),
    );
}

#[test]
fn c10_ball_system_metric() {
    let t = Instant::now();
    let (g, s) = catalog::lamplighter();
    let bs = build_ball_system(&g, &s, &lamp_chain(4), 4).unwrap();
    let axioms = metric_axiom_check(&bs, 4);
    let mut violations = 0;
    let mut exceptions = 0;
    for f in bs.chain_member(1) {
        let rep = bs_annihilator_check(&bs, f, 1).unwrap();
        violations += rep.violations.len();
        exceptions += rep.exceptions.len();
        // Recount from the norms directly.
        let finv = g.inverse(f);
        for x in bs.layer(3) {
            let (a, b) = (bs.norm(x).unwrap(), bs.norm(&g.mul(&finv, x)).unwrap());
            if a >= 2 && b >= 2 && a != b {
                violations += 1;
            }
        }
    }
    report(
        10,
        "ball-system metric",
        axioms.is_ok() && violations == 0,
        t.elapsed(),
        Some(120),
        &format!(
            "|B_n| = {:?}, axioms {}, {} in-range violations, {} low-norm exceptions",
            bs.layer_sizes(),
            if axioms.is_ok() { "hold" } else { "fail" },
            violations,
            exceptions
        ),
    );
}

#[test]
fn c11_determinism() {
    let t = Instant::now();
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("specs");
    let runs: Vec<(Command, &str, RunConfig)> = vec![
        (Command::Ball, "z2_standard.spec", RunConfig { r: Some(8), seed: Some(5), ..Default::default() }),
        (Command::Boundary, "z_line.spec", RunConfig::default()),
        (Command::Annihilator, "cylinder_n4.spec", RunConfig::default()),
        (Command::Annihilator, "fsf_z3.spec", RunConfig::default()),
        (Command::Polytope, "p4.spec", RunConfig::default()),
        (Command::Witness, "z2_standard.spec", RunConfig::default()),
        (Command::Ballsystem, "lamplighter.spec", RunConfig { n_max: Some(3), ..Default::default() }),
        (Command::Bend, "cylinder_diagonal_n30.spec", RunConfig::default()),
    ];
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let mut mismatches = Vec::new();
    for (cmd, file, flags) in &runs {
        let parsed = parse_spec(&dir.join(file)).unwrap();
        let once = run_command(*cmd, &parsed, flags).unwrap();
        let twice = run_command(*cmd, &parsed, flags).unwrap();
        let serial = single.install(|| run_command(*cmd, &parsed, flags).unwrap());
        let a = emit_report(&once.report);
        if a != emit_report(&twice.report) || a != emit_report(&serial.report) || once.side_files != serial.side_files {
            mismatches.push(format!("{} {file}", cmd.name()));
        }
    }
    report(
        11,
        "determinism",
        mismatches.is_empty(),
        t.elapsed(),
        None,
        &format!("{} runs repeated and re-run on one thread, mismatches: {mismatches:?}", runs.len()),
    );
}

//! Acceptance suite. Every check prints exactly one `PASS` or `FAIL` line
//! before asserting, so `cargo test --test acceptance -- --nocapture` gives a
//! per-criterion summary.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use carowei::algorithms::{
    boppana, greedy_max_degree_removal, greedy_min_degree, gwmin2, inclusion_frequencies, max_alg,
    monte_carlo,
};
use carowei::bounds::{self, cauchy_schwarz_sides, eval_lemma_technical};
use carowei::distsim::{simulate_one_round, stream_run, RoundConfig};
use carowei::experiment::{beta_fraction, sweep_rho, BETA_DENOMINATOR};
use carowei::graph::{
    brute_force_max_is, exact_max_is, gnp, petersen, regular_bipartite, turan_tight,
    weighted_bipartite, weighted_complete_bipartite,
};
use carowei::{Algorithm, Graph, RankAssignment, RankMode, WeightedGraph};

const TRIALS: usize = 100_000;
const SIGMAS: f64 = 4.0;

fn verdict(id: u32, title: &str, pass: bool, detail: String) {
    println!("{} criterion {id:>2} ({title}): {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {id} failed: {detail}");
}

fn rat(n: usize, d: usize) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `sum 1/(d(v)+1)` straight from the adjacency lists.
fn oracle_cw(g: &Graph) -> BigRational {
    (0..g.n()).fold(BigRational::zero(), |acc, v| acc + rat(1, g.degree(v) + 1))
}

/// `n^2 / (2m + n)`.
fn oracle_turan(g: &Graph) -> BigRational {
    if g.n() == 0 {
        return BigRational::zero();
    }
    rat(g.n() * g.n(), 2 * g.m() + g.n())
}

/// `sum w(v)^2 / w(N[v])`.
fn oracle_weighted_nbhd(wg: &WeightedGraph) -> BigRational {
    let g = wg.graph();
    (0..g.n()).fold(BigRational::zero(), |acc, v| {
        let closed: u64 = wg.weight(v) + g.neighbors(v).iter().map(|&u| wg.weight(u)).sum::<u64>();
        let w = BigInt::from(wg.weight(v));
        acc + BigRational::new(&w * &w, BigInt::from(closed))
    })
}

fn to_f64(r: &BigRational) -> f64 {
    bounds::to_f64(r)
}

/// Random graph with `n <= max_n` and at least one edge.
fn random_graph(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    loop {
        let n = rng.gen_range(2..=max_n);
        let p = rng.gen_range(0.03..0.6);
        let g = gnp(n, p, rng.gen()).unwrap();
        if g.m() > 0 {
            return g;
        }
    }
}

fn random_weights(rng: &mut ChaCha8Rng, n: usize) -> Vec<u64> {
    (0..n).map(|_| rng.gen_range(1..=100)).collect()
}

#[test]
fn criterion_01_expectation_identity() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut graphs: Vec<Graph> = (0..20).map(|_| random_graph(&mut rng, 100)).collect();
    graphs.push(petersen());

    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    for (i, g) in graphs.iter().enumerate() {
        let cw = oracle_cw(g);
        assert_eq!(bounds::caro_wei_exact(g), cw);
        let est = monte_carlo(Algorithm::Boppana, &WeightedGraph::unit(g.clone()), TRIALS, 1000 + i as u64).unwrap();
        let z = (est.mean - to_f64(&cw)).abs() / est.stderr;
        worst = worst.max(z);
        if z > SIGMAS {
            failures.push(i);
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && elapsed < Duration::from_secs(30);
    verdict(
        1,
        "E|B| = cw",
        pass,
        format!("{} graphs, worst |z| = {worst:.2}, failing {failures:?}, {elapsed:.2?}", graphs.len()),
    );
}

#[test]
fn criterion_02_selection_probability() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut checked = 0;
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    for i in 0..10 {
        let g = random_graph(&mut rng, 30);
        let weights = random_weights(&mut rng, g.n());
        let wg = WeightedGraph::new(g, weights).unwrap();
        let freqs = inclusion_frequencies(Algorithm::Max, &wg, TRIALS, 2000 + i).unwrap();
        for (v, est) in freqs.iter().enumerate() {
            let g = wg.graph();
            let closed: u64 = wg.weight(v) + g.neighbors(v).iter().map(|&u| wg.weight(u)).sum::<u64>();
            let p = wg.weight(v) as f64 / closed as f64;
            let dev = (est.mean - p).abs();
            let ok = if est.stderr == 0.0 { dev == 0.0 } else { dev <= SIGMAS * est.stderr };
            if est.stderr > 0.0 {
                worst = worst.max(dev / est.stderr);
            }
            if !ok {
                failures.push((i, v));
            }
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && elapsed < Duration::from_secs(60);
    verdict(
        2,
        "Pr[v in MAX] = w(v)/w(N[v])",
        pass,
        format!("{checked} vertices, worst |z| = {worst:.2}, failing {failures:?}, {elapsed:.2?}"),
    );
}

#[test]
fn criterion_03_turan_tightness() {
    let mut details = Vec::new();
    let mut pass = true;
    for delta in 1..=6usize {
        let t = turan_tight(delta, delta as u64).unwrap();
        let g = &t.graph;
        let alpha = exact_max_is(&WeightedGraph::unit(g.clone())).unwrap().1;
        let turan = oracle_turan(g);
        assert_eq!(bounds::turan_bound_exact(g), turan);
        let achieved = BigRational::from_integer(BigInt::from(alpha)) / &turan;
        let expected = rat((2 * delta + 1) * (2 * delta + 1), 8 * delta);
        let ok = g.max_degree() == delta
            && alpha == t.alpha as u64
            && achieved == expected
            && bounds::turan_ratio_exact(delta) == expected;
        pass &= ok;
        details.push(format!("D={delta}: alpha={alpha} T={turan} ratio={achieved}"));
    }
    verdict(3, "Turan ratio attained exactly", pass, details.join("; "));
}

#[test]
fn criterion_04_caro_wei_tightness() {
    let mut details = Vec::new();
    let mut pass = true;
    for (delta, side) in [(2, 10), (3, 12), (5, 15), (2, 40), (3, 50), (5, 60)] {
        let g = regular_bipartite(delta, side, 17).unwrap();
        let n = g.n();
        let cw = oracle_cw(&g);
        let regular = (0..n).all(|v| g.degree(v) == delta);
        let mut ok = regular && cw == rat(n, delta + 1) && bounds::caro_wei_exact(&g) == cw;
        let alpha = if side <= 15 {
            let a = exact_max_is(&WeightedGraph::unit(g.clone())).unwrap().1;
            ok &= a == side as u64;
            a
        } else {
            side as u64
        };
        let achieved = BigRational::from_integer(BigInt::from(alpha)) / &cw;
        ok &= achieved == rat(delta + 1, 2) && bounds::cw_ratio_exact(delta) == achieved;
        pass &= ok;
        details.push(format!("D={delta},side={side}: cw={cw} ratio={achieved}"));
    }
    verdict(4, "Caro-Wei ratio attained exactly", pass, details.join("; "));
}

#[test]
fn criterion_05_rho_two() {
    let start = Instant::now();
    let r = bounds::rho(2, 1e-12);
    let elapsed = start.elapsed();

    // Independent check of the minimum by a dense scan.
    let scan = (1..=1_000_000)
        .map(|i| {
            let x = i as f64 / 1e6;
            x * x / (2.0 + x) + 1.0 / (2.0 * x + 1.0)
        })
        .fold(f64::INFINITY, f64::min);
    assert!((r.inv_rho - scan).abs() < 1e-9, "minimiser disagrees with dense scan");

    let inv_ok = (r.inv_rho - 0.593).abs() <= 1e-3;
    let rho_ok = (r.rho - 1.657).abs() <= 1e-2;
    let time_ok = elapsed < Duration::from_millis(1);
    verdict(
        5,
        "rho(2)",
        inv_ok && rho_ok && time_ok,
        format!(
            "1/rho = {:.6} (target 0.593 +- 1e-3: {}), rho = {:.6} (target 1.657 +- 1e-2: {}), argmin = {:.6}, dense scan 1/rho = {scan:.6}, {elapsed:.2?}",
            r.inv_rho,
            if inv_ok { "ok" } else { "off" },
            r.rho,
            if rho_ok { "ok" } else { "off" },
            r.argmin
        ),
    );
}

#[test]
fn criterion_06_asymptote() {
    let delta = 1_000_000;
    let r = bounds::rho(delta, 1e-12);
    let limit = 2f64.powf(2.0 / 3.0) / 3.0;
    let x_star = 2f64.powf(-1.0 / 3.0);
    let scaled = r.rho / (delta as f64 + 1.0);
    let pass = (scaled - limit).abs() < 1e-3 && (r.argmin - x_star).abs() < 1e-2;
    verdict(
        6,
        "rho(D)/(D+1) -> 2^(2/3)/3",
        pass,
        format!("rho/(D+1) = {scaled:.6} vs {limit:.6}, argmin = {:.6} vs {x_star:.6}", r.argmin),
    );
}

#[test]
fn criterion_07_weighted_tight_family() {
    let (delta, side) = (3usize, 50usize);
    let rho3 = bounds::rho(delta, 1e-12);
    let (num, den) = beta_fraction(rho3.argmin, BETA_DENOMINATOR);
    let wg = weighted_bipartite(delta, side, num, den, 7).unwrap();

    let beta = num as f64 / den as f64;
    let d = delta as f64;
    let closed_form = side as f64 * den as f64 * (1.0 / (1.0 + d * beta) + beta * beta / (beta + d));
    let per_vertex = to_f64(&oracle_weighted_nbhd(&wg));
    assert!((closed_form - per_vertex).abs() < 1e-9 * closed_form);

    // The heavy side is a maximum-weight independent set: a perfect matching
    // exists in a regular bipartite graph and each edge holds at most `den`.
    let alpha = (side as u64 * den) as f64;
    let est = monte_carlo(Algorithm::Max, &wg, TRIALS, 77).unwrap();
    let ratio = alpha / est.mean;
    let band = SIGMAS * alpha * est.stderr / (est.mean * est.mean);
    let mean_ok = est.within(closed_form, SIGMAS);
    let ratio_ok = (ratio - rho3.rho).abs() <= band;
    verdict(
        7,
        "weighted tight family",
        mean_ok && ratio_ok,
        format!(
            "beta = {num}/{den}, E[w] = {:.3} +- {:.3} vs {closed_form:.3}; ratio {ratio:.5} vs rho(3) = {:.5} (band {band:.5})",
            est.mean, est.stderr, rho3.rho
        ),
    );
}

#[test]
fn criterion_08_unchanged_rule_weighted() {
    let (n_side, q) = (3usize, 9u64);
    let wg = weighted_complete_bipartite(n_side, q).unwrap();
    let delta = wg.graph().max_degree();
    let target = (n_side as f64 + n_side as f64 * q as f64) / (delta as f64 + 1.0);
    let est = monte_carlo(Algorithm::Boppana, &wg, TRIALS, 88).unwrap();
    let alpha = exact_max_is(&wg).unwrap().1 as f64;
    verdict(
        8,
        "K_(N,N) lower bound",
        est.within(target, SIGMAS) && (target - 7.5).abs() < 1e-12,
        format!(
            "E[w] = {:.4} +- {:.4} vs {target}; ratio {:.4} vs (D+1)/(1+1/Q) = {:.4}",
            est.mean,
            est.stderr,
            alpha / est.mean,
            (delta as f64 + 1.0) / (1.0 + 1.0 / q as f64)
        ),
    );
}

#[test]
fn criterion_09_guarantee_sandwich() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    let mut violations = Vec::new();
    let graphs = 1000;
    for i in 0..graphs {
        let g = random_graph(&mut rng, 30);
        let delta = g.max_degree();
        let unit = WeightedGraph::unit(g.clone());
        let alpha = exact_max_is(&unit).unwrap().1;
        if g.n() <= 20 {
            assert_eq!(alpha, brute_force_max_is(&unit).unwrap().1);
        }
        let alpha_r = BigRational::from_integer(BigInt::from(alpha));
        let t = oracle_turan(&g);
        let cw = oracle_cw(&g);
        let cw_ratio = rat(delta + 1, 2);
        let turan_ratio = rat((2 * delta + 1) * (2 * delta + 1), 8 * delta);

        let mut check = |ok: bool, what: &str| {
            if !ok {
                violations.push(format!("graph {i}: {what}"));
            }
        };
        check(t <= cw, "T <= cw");
        check(cw <= alpha_r, "cw <= alpha");
        check(alpha_r <= &cw_ratio * &cw, "alpha <= cw_ratio * cw");
        check(alpha_r <= &turan_ratio * &t, "alpha <= turan_ratio * T");
        let min_deg = greedy_min_degree(&g);
        let max_rem = greedy_max_degree_removal(&g);
        check(g.is_independent(&min_deg) && g.is_independent(&max_rem), "greedy independent");
        check(rat(min_deg.len(), 1) >= cw, "greedy-min >= cw");
        check(rat(max_rem.len(), 1) >= cw, "greedy-max >= cw");

        let weights = random_weights(&mut rng, g.n());
        let wg = WeightedGraph::new(g.clone(), weights).unwrap();
        let chosen = gwmin2(&wg);
        let value = BigRational::from_integer(BigInt::from(wg.set_weight(&chosen)));
        check(g.is_independent(&chosen), "gwmin2 independent");
        check(value >= oracle_weighted_nbhd(&wg), "gwmin2 >= weighted bound");
        check(wg.set_weight(&chosen) <= exact_max_is(&wg).unwrap().1, "gwmin2 <= weighted alpha");
    }
    let elapsed = start.elapsed();
    let pass = violations.is_empty() && elapsed < Duration::from_secs(120);
    verdict(
        9,
        "guarantee sandwich",
        pass,
        format!("{graphs} graphs, {} violations {:?}, {elapsed:.2?}", violations.len(), violations.iter().take(5).collect::<Vec<_>>()),
    );
}

#[test]
fn criterion_10_equivalence_triangle() {
    let mut rng = ChaCha8Rng::seed_from_u64(1010);
    let mut mismatches = Vec::new();
    let mut comparisons = 0;
    for i in 0..100u64 {
        let g = random_graph(&mut rng, 40);
        let weights = random_weights(&mut rng, g.n());
        let wg = WeightedGraph::new(g.clone(), weights.clone()).unwrap();
        let seed = 10_000 + i;
        for weighted in [false, true] {
            let (mode, w) = if weighted {
                (RankMode::Weighted, Some(weights.as_slice()))
            } else {
                (RankMode::Unweighted, None)
            };
            let ranks = RankAssignment::sample(g.n(), mode, w, seed).unwrap();
            let library = if weighted { max_alg(&wg, &ranks).unwrap() } else { boppana(&g, &ranks) };
            let (simulated, trace) = simulate_one_round(&g, w, seed, RoundConfig::default()).unwrap();
            assert!(trace.max_message_bits <= trace.budget_bits);
            if simulated != library {
                mismatches.push(format!("graph {i} weighted={weighted}: simulation"));
            }
            let mut edges: Vec<(usize, usize)> = g.edges().collect();
            for order in 0..10 {
                edges.shuffle(&mut rng);
                let oriented = edges.iter().map(|&(u, v)| if rng.gen() { (u, v) } else { (v, u) });
                let streamed = stream_run(&ranks, oriented.collect::<Vec<_>>()).unwrap();
                comparisons += 1;
                if streamed != library {
                    mismatches.push(format!("graph {i} weighted={weighted} order {order}: stream"));
                }
            }
        }
    }
    verdict(
        10,
        "stream = simulation = library",
        mismatches.is_empty(),
        format!("{comparisons} stream runs over 100 graphs, mismatches {mismatches:?}"),
    );
}

#[test]
fn criterion_11_inequality_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(1111);
    let mut cs_violations = 0;
    for _ in 0..10_000 {
        let len = rng.gen_range(1..=20);
        let w: Vec<f64> = (0..len).map(|_| rng.gen_range(1e-3..100.0)).collect();
        let x: Vec<f64> = (0..len).map(|_| rng.gen_range(1e-3..100.0)).collect();
        let (lhs, rhs) = cauchy_schwarz_sides(&w, &x);
        // Equality holds when w is proportional to x; allow rounding there.
        if lhs < rhs * (1.0 - 1e-12) {
            cs_violations += 1;
        }
    }

    let mut mono_violations = 0;
    for _ in 0..100 {
        let b = rng.gen_range(0.01..10.0);
        let a = b * rng.gen_range(1.01..10.0);
        let y = rng.gen_range(0.01..10.0);
        let x = rng.gen_range(0.01..10.0);
        let z = y + x + rng.gen_range(0.0..10.0);
        let values: Vec<f64> =
            (0..100).map(|i| eval_lemma_technical(a, b, y, z, x, i as f64 / 99.0).unwrap()).collect();
        if values.windows(2).any(|w| w[1] > w[0]) {
            mono_violations += 1;
        }
        let at_one = eval_lemma_technical(a, b, y, z, x, 1.0).unwrap();
        if (at_one - (a / (y + x) + b / z)).abs() > 1e-12 * at_one {
            mono_violations += 1;
        }
    }
    verdict(
        11,
        "inequality properties",
        cs_violations == 0 && mono_violations == 0,
        format!("Cauchy-Schwarz violations {cs_violations}/10000, monotonicity violations {mono_violations}/100"),
    );
}

#[test]
fn criterion_12_sweep_shape() {
    let rows = sweep_rho(2, 20, 1e-12).unwrap();
    let lower = 2f64.powf(2.0 / 3.0) / 3.0;
    let scaled: Vec<f64> = rows.iter().map(|r| r.rho_over_delta_plus_1()).collect();
    let monotone = scaled.windows(2).all(|w| w[1] <= w[0]);
    let contained = scaled.iter().all(|&s| (lower..=0.563).contains(&s));
    verdict(
        12,
        "rho(D)/(D+1) sweep",
        rows.len() == 19 && monotone && contained,
        format!(
            "D=2..20: first {:.5}, last {:.5}, nonincreasing {monotone}, within [{lower:.5}, 0.563] {contained}",
            scaled[0],
            scaled[scaled.len() - 1]
        ),
    );
}

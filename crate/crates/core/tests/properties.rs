use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use wpos_core::equilibria::{
    deviation_report, enumerate_analysis, iterated_dominance, potential_minimize, potential_value, MinimizeMode,
    PotentialConfig, DEFAULT_CAP, MOVE_FLOOR,
};
use wpos_core::generators::{random_exponential_game, random_game, RandomGameConfig};
use wpos_core::numerics::{a_hat, faulhaber_exact, gamma_d, s_hat, solve_phi, FaulhaberPoly, MAX_EXACT_DEGREE};
use wpos_core::tolerance::{strictly_less, Verdict};
use wpos_core::{Game, Latency, Profile};

fn config() -> impl Strategy<Value = RandomGameConfig> {
    (1..=3usize, 1..=4usize, 0..=3usize, prop::sample::select(vec![1.0, 2.0, 4.0]), 1..=4usize).prop_map(
        |(players, resources, max_degree, weight_range, k)| RandomGameConfig {
            players,
            resources,
            max_degree,
            weight_range,
            strategies_per_player: k.min((1 << resources) - 1),
        },
    )
}

fn game() -> impl Strategy<Value = Game> {
    (any::<u64>(), config()).prop_map(|(seed, cfg)| random_game(seed, &cfg).unwrap())
}

fn exp_game() -> impl Strategy<Value = Game> {
    (any::<u64>(), config()).prop_map(|(seed, cfg)| random_exponential_game(seed, &cfg).unwrap())
}

fn all_profiles(g: &Game) -> Vec<Profile> {
    g.profiles().map(Profile::new).collect()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

/// Same game with every weight multiplied by `f`, latencies untouched.
fn reweighted(g: &Game, f: f64) -> Game {
    Game::new(g.weights().iter().map(|w| w * f).collect(), g.resources().to_vec(), g.strategies().to_vec()).unwrap()
}

/// Same game with every latency multiplied by `k`.
fn rescaled_latencies(g: &Game, k: f64) -> Game {
    let resources = g
        .resources()
        .iter()
        .map(|l| match l {
            Latency::Polynomial(c) => Latency::polynomial(c.iter().map(|a| a * k).collect::<Vec<_>>()),
            Latency::Exponential { scale } => Latency::exponential(scale * k),
        })
        .collect();
    Game::new(g.weights().to_vec(), resources, g.strategies().to_vec()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn social_cost_is_weighted_sum_of_player_costs(g in game()) {
        for p in all_profiles(&g) {
            let social = g.social_cost(&p).unwrap();
            let weighted: f64 = g.player_costs(&p).unwrap().iter().zip(g.weights()).map(|(c, w)| c * w).sum();
            prop_assert!((social - weighted).abs() <= 1e-9 * social.max(1e-300) || social == weighted);
        }
    }

    #[test]
    fn loads_are_additive(g in game(), extra in 0..4usize, w in 1.0..5.0f64) {
        let strat = extra % g.strategy_count(0);
        let mut weights = g.weights().to_vec();
        weights.push(w);
        let mut strategies = g.strategies().to_vec();
        strategies.push(g.strategies()[0].clone());
        let bigger = Game::new(weights, g.resources().to_vec(), strategies).unwrap();
        for p in all_profiles(&g) {
            let before = g.loads(&p).unwrap();
            let mut choice = p.into_inner();
            choice.push(strat);
            let after = bigger.loads(&Profile::new(choice)).unwrap();
            let added = g.strategy(0, strat);
            for e in 0..g.resources().len() {
                let expected = before.get(e) + if added.contains(&e) { w } else { 0.0 };
                prop_assert_eq!(after.get(e), expected);
            }
        }
    }

    #[test]
    fn monomial_expansion_preserves_player_costs(g in game()) {
        let expanded = g.expand_to_monomials().unwrap();
        for p in all_profiles(&g) {
            let a = g.player_costs(&p).unwrap();
            let b = expanded.player_costs(&p).unwrap();
            for (x, y) in a.iter().zip(&b) {
                prop_assert!(close(*x, *y, 1e-12), "{x} vs {y} at {p}");
            }
        }
    }

    #[test]
    fn canonical_scale_preserves_cost_order(g in game(), f in 0.1..10.0f64) {
        let g = reweighted(&g, f);
        let s = g.canonical_scale().unwrap();
        prop_assert!((s.min_weight() - 1.0).abs() <= 1e-12);
        let profiles = all_profiles(&g);
        for i in 0..g.players() {
            let orig: Vec<f64> = profiles.iter().map(|p| g.player_cost(p, i).unwrap()).collect();
            let scaled: Vec<f64> = profiles.iter().map(|p| s.player_cost(p, i).unwrap()).collect();
            for a in 0..profiles.len() {
                for b in 0..profiles.len() {
                    if orig[a] < orig[b] && !close(orig[a], orig[b], 1e-9) {
                        prop_assert!(scaled[a] < scaled[b], "player {i}: order of {} and {} flipped", profiles[a], profiles[b]);
                    }
                }
            }
        }
    }

    #[test]
    fn deviation_classification_survives_canonical_scale(g in game(), f in 0.1..10.0f64) {
        let g = reweighted(&g, f);
        let s = g.canonical_scale().unwrap();
        for p in all_profiles(&g) {
            let a = deviation_report(&g, &p).unwrap();
            let b = deviation_report(&s, &p).unwrap();
            for (x, y) in a.players.iter().zip(&b.players) {
                // Ties may resolve differently; the chosen alternative must still be a best one.
                prop_assert!(close(x.best_cost, y.best_cost, 1e-9));
            }
            if a.margin(1.0).abs() > 1e-6 {
                prop_assert_eq!(a.is_alpha_equilibrium(1.0), b.is_alpha_equilibrium(1.0));
            }
        }
    }

    #[test]
    fn alpha_star_invariant_under_latency_scaling(g in game(), k in 0.01..100.0f64) {
        let h = rescaled_latencies(&g, k);
        for p in all_profiles(&g) {
            let a = deviation_report(&g, &p).unwrap().alpha_star;
            let b = deviation_report(&h, &p).unwrap().alpha_star;
            prop_assert!(a == b || close(a, b, 1e-9), "{a} vs {b}");
        }
    }

    #[test]
    fn approximate_improving_moves_lower_the_potential(g in game(), gamma in prop::sample::select(vec![1.0, 1.5, 2.0])) {
        let cfg = PotentialConfig::new(gamma).unwrap();
        let alpha = cfg.alpha_guarantee(&g);
        for p in all_profiles(&g) {
            let before = potential_value(&g, &cfg, &p).unwrap();
            for i in 0..g.players() {
                let cur = g.player_cost(&p, i).unwrap();
                for alt in 0..g.strategy_count(i) {
                    let q = p.with(i, alt);
                    let dev = g.player_cost(&q, i).unwrap();
                    if strictly_less(alpha * dev, cur) == Verdict::Holds {
                        let after = potential_value(&g, &cfg, &q).unwrap();
                        prop_assert!(after < before, "move {p} -> {q}: {before} to {after}");
                    }
                }
            }
        }
    }

    #[test]
    fn local_descent_strictly_decreases_potential(g in game(), start in any::<u64>()) {
        let cfg = PotentialConfig::default();
        let choice: Vec<usize> =
            (0..g.players()).map(|i| (start >> (8 * i)) as usize % g.strategy_count(i)).collect();
        let p0 = Profile::new(choice);
        let v0 = potential_value(&g, &cfg, &p0).unwrap();
        let r = potential_minimize(&g, &cfg, MinimizeMode::Local, Some(&p0)).unwrap();
        if r.steps == 0 {
            prop_assert_eq!(&r.profile, &p0);
        } else {
            prop_assert!(r.potential < v0 - r.steps as f64 * MOVE_FLOOR * 0.5);
        }
        prop_assert!(close(r.potential, potential_value(&g, &cfg, &r.profile).unwrap(), 1e-12) || r.potential == 0.0);
    }

    #[test]
    fn dominance_survivor_is_an_equilibrium(g in game()) {
        let report = enumerate_analysis(&g, 1.0, DEFAULT_CAP).unwrap();
        let dom = iterated_dominance(&g, 1.0, 0.0, DEFAULT_CAP).unwrap();
        if let Some(s) = dom.survivor {
            prop_assert!(report.equilibrium_profiles().any(|e| *e == s), "survivor {s} not an equilibrium");
        }
    }

    #[test]
    fn optimum_is_not_worse_than_any_equilibrium(g in game()) {
        let report = enumerate_analysis(&g, 1.0, DEFAULT_CAP).unwrap();
        if report.has_equilibrium() && report.opt_cost > 0.0 {
            prop_assert!(report.pos >= 1.0 - 1e-9);
            prop_assert!(report.pos <= report.poa);
        }
    }

    #[test]
    fn exponential_improving_moves_lower_the_potential(g in exp_game()) {
        let cfg = PotentialConfig::default();
        for p in all_profiles(&g) {
            let before = potential_value(&g, &cfg, &p).unwrap();
            for i in 0..g.players() {
                let cur = g.player_cost(&p, i).unwrap();
                for alt in 0..g.strategy_count(i) {
                    let q = p.with(i, alt);
                    if strictly_less(g.player_cost(&q, i).unwrap(), cur) == Verdict::Holds {
                        prop_assert!(potential_value(&g, &cfg, &q).unwrap() < before);
                    }
                }
            }
        }
    }

    #[test]
    fn exact_potential_meets_its_guarantees(g in game(), gamma in prop::sample::select(vec![1.0, 2.0])) {
        let cfg = PotentialConfig::exact(gamma).unwrap();
        let report = enumerate_analysis(&g, f64::INFINITY, DEFAULT_CAP).unwrap();
        let r = potential_minimize(&g, &cfg, MinimizeMode::Global { cap: DEFAULT_CAP }, None).unwrap();
        prop_assert!(r.certificate.alpha_star <= cfg.alpha_guarantee(&g) * (1.0 + 1e-6));
        let cost = g.social_cost(&r.profile).unwrap();
        prop_assert!(cost <= cfg.pos_guarantee(&g) * report.opt_cost * (1.0 + 1e-6) || cost == 0.0);
    }

    #[test]
    fn gamma_d_stays_below_its_bound(e in std::f64::consts::LOG10_2..6.0) {
        let d = 10f64.powf(e);
        prop_assert!(gamma_d(d).unwrap() <= 1.368);
    }

    #[test]
    fn phi_below_lambert_growth(d in 9u32..=2000) {
        let df = f64::from(d);
        prop_assert!(solve_phi(d) <= gamma_d(df).unwrap() * df / df.ln());
    }

    #[test]
    fn faulhaber_matches_power_sums(m in 0u32..=12, n in 1i64..=40) {
        let exact: BigInt = (1..=n).map(|k| num_traits::pow(BigInt::from(k), m as usize)).sum();
        let p = FaulhaberPoly::new(m);
        prop_assert_eq!(p.eval_rational(&BigRational::from_integer(BigInt::from(n))), BigRational::from_integer(exact.clone()));
        let approx = faulhaber_exact(m, n as f64);
        let exact_f: f64 = exact.to_string().parse().unwrap();
        prop_assert!(close(approx, exact_f, 1e-9));
    }
}

/// The inequality lemmas behind the potential method, restated for the exact
/// power sums of degree at most 4.
#[test]
fn exact_power_sums_satisfy_the_potential_lemmas() {
    let le = |a: f64, b: f64| a <= b + 1e-12 * a.abs().max(b.abs());
    let grid: Vec<f64> = (0..=90).map(|k| 1.0 + 0.1 * f64::from(k)).collect();
    for m in 0..=MAX_EXACT_DEGREE {
        let mf = f64::from(m);
        for (k, &x) in grid.iter().enumerate() {
            let ax = a_hat(m, x).unwrap();
            if k > 0 {
                assert!(le(a_hat(m, grid[k - 1]).unwrap(), ax), "Â_{m} not increasing at {x}");
            }
            if m < MAX_EXACT_DEGREE {
                let bx = a_hat(m + 1, x).unwrap();
                assert!(le(bx / (mf + 2.0), ax / (mf + 1.0)), "Â_m/(m+1) at m = {m}, x = {x}");
                assert!(le(ax, bx), "Â_m(x) in m at m = {m}, x = {x}");
                for &y in grid.iter().filter(|&&y| y >= x) {
                    let ay = a_hat(m, y).unwrap();
                    let by = a_hat(m + 1, y).unwrap();
                    assert!(le(bx / by, ax / ay), "Â_m(x)/Â_m(y) at m = {m}, x = {x}, y = {y}");
                }
            }
        }
        for &g in &[1.0, 1.5, 2.0, 5.0] {
            let gm = f64::powi(g, m as i32 + 1);
            for &w in &[1.0, 1.5, 2.0, 5.0] {
                let lo = gm / a_hat(m, g * w).unwrap();
                for k in 0..=400 {
                    let x = 0.05 * f64::from(k);
                    let r = (s_hat(m, g * (x + w)).unwrap() - s_hat(m, g * x).unwrap()) / (w * (x + w).powi(m as i32));
                    assert!(le(lo, r) && le(r, gm), "increment m = {m}, gamma = {g}, w = {w}, x = {x}: {r}");
                }
            }
            let hi = gm / a_hat(m, g).unwrap();
            for k in 20..=400 {
                let x = 0.05 * f64::from(k);
                let r = s_hat(m, g * x).unwrap() / x.powi(m as i32 + 1);
                assert!(le(gm / (mf + 1.0), r) && le(r, hi), "level m = {m}, gamma = {g}, x = {x}: {r}");
            }
        }
    }
}

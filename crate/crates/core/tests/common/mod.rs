//! Strategies and invariant checks shared by the property suite and the
//! acceptance runner.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use owadom::dominance::{
    aggregate_measure, delta_weights, dominates, surrogate, DominanceRelation, RankingMethod,
};
use owadom::fuzzy::{Gfn, Tfn};
use owadom::lattice::{
    inclusion_index, lattice_max, lattice_min, rank_lattice_ini, LatticeOptions, SampledMembership,
    TNorm,
};
use owadom::measures::{CumulativeMeasure, LinguisticScale, UncertainSatisfaction};
use owadom::owa::{owa_aggregate, Quantifier, WeightVector};
use owadom::pipeline::{rank_alternatives, rank_alternatives_with, Alternative, DecisionProblem};
use owadom::report::to_json;
use owadom::Exec;

pub type Check = Result<(), TestCaseError>;

// ---------------------------------------------------------------- strategies

pub fn unit() -> impl Strategy<Value = f64> {
    prop_oneof![
        8 => 0.0..=1.0,
        1 => Just(0.0),
        1 => Just(1.0),
    ]
}

pub fn tfn() -> BoxedStrategy<Tfn> {
    prop_oneof![
        6 => (unit(), unit(), unit()).prop_map(|(x, y, z)| {
            let mut v = [x, y, z];
            v.sort_by(f64::total_cmp);
            Tfn::new(v[0], v[1], v[2]).unwrap()
        }),
        1 => unit().prop_map(Tfn::crisp),
        1 => (unit(), 0.0..0.5).prop_map(|(b, w)| Tfn::new(b, b, b + w).unwrap()),
    ]
    .boxed()
}

/// Triangular numbers with a non-degenerate left or right leg.
pub fn proper_tfn() -> impl Strategy<Value = Tfn> {
    (-2.0..2.0, 0.01..1.0, 0.01..1.0).prop_map(|(b, l, r)| Tfn::new(b - l, b, b + r).unwrap())
}

/// Strictly descending scale with symmetric grades, so centroids descend with
/// the modes.
pub fn scale(n: usize) -> impl Strategy<Value = LinguisticScale> {
    (
        prop::collection::vec(0.0..1.0f64, n),
        prop::collection::vec(0.0..0.3f64, n),
    )
        .prop_filter_map("modes too close", move |(mut modes, spreads)| {
            modes.sort_by(|a, b| b.total_cmp(a));
            if modes.windows(2).any(|w| w[0] - w[1] < 1e-6) {
                return None;
            }
            let values = modes
                .iter()
                .zip(&spreads)
                .map(|(&b, &s)| Tfn::new(b - s, b, b + s).unwrap())
                .collect();
            LinguisticScale::new((0..n).map(|i| format!("g{i}")).collect(), values).ok()
        })
}

pub fn any_scale() -> impl Strategy<Value = LinguisticScale> {
    (2usize..8).prop_flat_map(scale)
}

pub fn satisfaction(n: usize) -> BoxedStrategy<UncertainSatisfaction> {
    prop_oneof![
        prop::collection::vec(0.0..1.0f64, n)
            .prop_filter("zero mass", |v| v.iter().sum::<f64>() > 1e-3)
            .prop_map(|v| {
                let total: f64 = v.iter().sum();
                UncertainSatisfaction::Probability(v.iter().map(|x| x / total).collect())
            }),
        (prop::collection::vec(unit(), n), 0..n).prop_map(|(mut v, k)| {
            v[k] = 1.0;
            UncertainSatisfaction::Possibility(v)
        }),
        (0..n, 0..n).prop_map(|(x, y)| UncertainSatisfaction::Interval {
            lo: x.min(y),
            hi: x.max(y)
        }),
        (0..n).prop_map(UncertainSatisfaction::Certain),
    ]
    .boxed()
}

/// Cumulative measure drawn from a coarse lattice of levels so that
/// dominance between independent draws is common.
pub fn coarse_measure(n: usize) -> impl Strategy<Value = CumulativeMeasure> {
    prop::collection::vec(0u8..=4, n - 1).prop_map(|mut v| {
        v.sort();
        let mut values: Vec<f64> = v.iter().map(|&k| k as f64 / 4.0).collect();
        values.push(1.0);
        CumulativeMeasure::new(values).unwrap()
    })
}

pub fn measure(n: usize) -> impl Strategy<Value = CumulativeMeasure> {
    prop_oneof![
        coarse_measure(n).boxed(),
        satisfaction(n)
            .prop_map(move |s| s.cumulative(n).unwrap())
            .boxed(),
    ]
}

/// Nonnegative weights summing to one.
pub fn weights(q: usize) -> impl Strategy<Value = WeightVector> {
    prop::collection::vec(0.0..1.0f64, q)
        .prop_filter("zero weights", |v| v.iter().sum::<f64>() > 1e-3)
        .prop_map(|v| {
            let total: f64 = v.iter().sum();
            WeightVector::new(v.iter().map(|x| x / total).collect()).unwrap()
        })
}

pub fn quantifier() -> impl Strategy<Value = Quantifier> {
    prop_oneof![
        (0.2..5.0f64).prop_map(Quantifier::Power),
        prop::collection::vec((0.0..1.0f64, 0.0..1.0f64), 0..4).prop_map(|inner| {
            let mut zs: Vec<f64> = inner.iter().map(|p| p.0).collect();
            let mut qs: Vec<f64> = inner.iter().map(|p| p.1).collect();
            zs.sort_by(f64::total_cmp);
            qs.sort_by(f64::total_cmp);
            zs.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
            let mut knots = vec![(0.0, 0.0)];
            knots.extend(
                zs.iter()
                    .zip(&qs)
                    .filter(|(z, _)| **z > 1e-9 && **z < 1.0 - 1e-9)
                    .map(|(&z, &q)| (z, q)),
            );
            knots.push((1.0, 1.0));
            Quantifier::piecewise_linear(knots).unwrap()
        }),
    ]
}

pub fn problem() -> impl Strategy<Value = DecisionProblem> {
    (2usize..6, 1usize..5, 1usize..6, quantifier())
        .prop_flat_map(|(n, q, alts, quant)| {
            (
                scale(n),
                prop::collection::vec(prop::collection::vec(satisfaction(n), q), alts),
                Just(quant),
            )
        })
        .prop_map(|(scale, sats, quantifier)| DecisionProblem {
            scale,
            criteria: (0..sats[0].len()).map(|k| format!("C{k}")).collect(),
            quantifier,
            importances: None,
            alternatives: sats
                .into_iter()
                .enumerate()
                .map(|(i, satisfactions)| Alternative {
                    name: format!("a{i}"),
                    satisfactions,
                })
                .collect(),
            ranking: RankingMethod::Centroid,
            references: Vec::new(),
        })
}

// ----------------------------------------------------------------- oracles

/// Validity checked from first principles rather than through the library.
pub fn is_valid_cumulative(values: &[f64]) -> bool {
    values.iter().all(|&v| (-1e-12..=1.0 + 1e-12).contains(&v))
        && values.windows(2).all(|w| w[1] >= w[0] - 1e-12)
        && values.last().is_some_and(|&v| (v - 1.0).abs() < 1e-9)
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn fmax(xs: &[f64]) -> f64 {
    xs.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

fn fmin(xs: &[f64]) -> f64 {
    xs.iter().copied().fold(f64::INFINITY, f64::min)
}

// ------------------------------------------------------------------ checks

pub fn owa_monotone(a: &[f64], bumps: &[f64], w: &WeightVector) -> Check {
    let b: Vec<f64> = a.iter().zip(bumps).map(|(x, d)| x + d).collect();
    let (oa, ob) = (owa_aggregate(a, w).unwrap(), owa_aggregate(&b, w).unwrap());
    prop_assert!(oa <= ob + 1e-12, "OWA({a:?}) = {oa} > OWA({b:?}) = {ob}");
    Ok(())
}

pub fn owa_commutative(a: &[f64], perm: &[usize], w: &WeightVector) -> Check {
    let b: Vec<f64> = perm.iter().map(|&i| a[i]).collect();
    let (oa, ob) = (owa_aggregate(a, w).unwrap(), owa_aggregate(&b, w).unwrap());
    prop_assert!((oa - ob).abs() <= 1e-12, "{oa} vs {ob}");
    Ok(())
}

pub fn owa_bounded(a: &[f64], w: &WeightVector) -> Check {
    let o = owa_aggregate(a, w).unwrap();
    prop_assert!(
        fmin(a) - 1e-12 <= o && o <= fmax(a) + 1e-12,
        "{o} outside [{}, {}]",
        fmin(a),
        fmax(a)
    );
    Ok(())
}

pub fn owa_special_weights(a: &[f64], c: f64, w: &WeightVector) -> Check {
    let q = a.len();
    let constant = vec![c; q];
    prop_assert!((owa_aggregate(&constant, w).unwrap() - c).abs() <= 1e-12);

    let mut star = vec![0.0; q];
    star[0] = 1.0;
    prop_assert_eq!(
        owa_aggregate(a, &WeightVector::new(star).unwrap()).unwrap(),
        fmax(a)
    );
    let mut low = vec![0.0; q];
    low[q - 1] = 1.0;
    prop_assert_eq!(
        owa_aggregate(a, &WeightVector::new(low).unwrap()).unwrap(),
        fmin(a)
    );
    let ave = WeightVector::new(vec![1.0 / q as f64; q]).unwrap();
    prop_assert!((owa_aggregate(a, &ave).unwrap() - mean(a)).abs() <= 1e-12);
    Ok(())
}

pub fn cumulative_valid(s: &UncertainSatisfaction, n: usize) -> Check {
    let m = s
        .cumulative(n)
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(m.len(), n);
    prop_assert!(
        is_valid_cumulative(m.values()),
        "{:?} -> {:?}",
        s,
        m.values()
    );
    Ok(())
}

pub fn aggregate_valid(measures: &[CumulativeMeasure], w: &WeightVector) -> Check {
    let refs: Vec<&CumulativeMeasure> = measures.iter().collect();
    let agg = aggregate_measure(&refs, w).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(is_valid_cumulative(agg.values()), "{:?}", agg.values());
    Ok(())
}

pub fn surrogate_certainty(scale: &LinguisticScale, k: usize) -> Check {
    let k = k % scale.len();
    let s = surrogate(&CumulativeMeasure::unit_step(k, scale.len()), scale).unwrap();
    prop_assert_eq!(s, scale.values()[k]);
    Ok(())
}

pub fn surrogate_consistent_with_dominance(
    scale: &LinguisticScale,
    a: &CumulativeMeasure,
    b: &CumulativeMeasure,
) -> Check {
    if dominates(a, b).unwrap() == DominanceRelation::FirstDominates {
        let (sa, sb) = (surrogate(a, scale).unwrap(), surrogate(b, scale).unwrap());
        prop_assert!(
            sa.centroid().x0 >= sb.centroid().x0 - 1e-12,
            "{:?} dominates {:?} but {} < {}",
            a.values(),
            b.values(),
            sa,
            sb
        );
    }
    Ok(())
}

pub fn delta_inverts_prefix(m: &CumulativeMeasure) -> Check {
    let deltas = delta_weights(m);
    let mut acc = 0.0;
    for (d, v) in deltas.iter().zip(m.values()) {
        prop_assert!(*d >= -1e-12);
        acc += d;
        prop_assert!((acc - v).abs() <= 1e-12);
    }
    Ok(())
}

pub fn dominance_order_laws(
    a: &CumulativeMeasure,
    b: &CumulativeMeasure,
    c: &CumulativeMeasure,
) -> Check {
    use DominanceRelation::*;
    let ab = dominates(a, b).unwrap();
    prop_assert_eq!(dominates(b, a).unwrap(), ab.reverse());
    prop_assert_eq!(dominates(a, a).unwrap(), Equal);
    let bc = dominates(b, c).unwrap();
    if ab == FirstDominates && bc == FirstDominates {
        prop_assert_eq!(dominates(a, c).unwrap(), FirstDominates);
    }
    if matches!(ab, FirstDominates | Equal) && matches!(bc, FirstDominates | Equal) {
        prop_assert!(matches!(dominates(a, c).unwrap(), FirstDominates | Equal));
    }
    Ok(())
}

const GRID: usize = 1001;

pub fn lattice_idempotent(p: &Tfn) -> Check {
    let grid = owadom::lattice::union_grid(p, p, GRID).unwrap();
    let sp = SampledMembership::sample(p, &grid).unwrap();
    prop_assert_eq!(lattice_min(p, p, GRID).unwrap(), sp.clone());
    prop_assert_eq!(lattice_max(p, p, GRID).unwrap(), sp);
    Ok(())
}

pub fn lattice_commutative(p: &Tfn, q: &Tfn) -> Check {
    prop_assert_eq!(
        lattice_min(p, q, GRID).unwrap(),
        lattice_min(q, p, GRID).unwrap()
    );
    prop_assert_eq!(
        lattice_max(p, q, GRID).unwrap(),
        lattice_max(q, p, GRID).unwrap()
    );
    Ok(())
}

/// With `p` wholly left of `q`, `MIN` is `p` and `MAX` is `q`, exactly.
pub fn lattice_disjoint(p: &Tfn, gap: f64, q: &Tfn) -> Check {
    let shift = p.c() - q.a() + gap;
    let q = Tfn::new(q.a() + shift, q.b() + shift, q.c() + shift).unwrap();
    let min = lattice_min(p, &q, GRID).unwrap();
    let max = lattice_max(p, &q, GRID).unwrap();
    prop_assert_eq!(
        min.max_abs_diff(&SampledMembership::sample(p, min.grid()).unwrap()),
        0.0
    );
    prop_assert_eq!(
        max.max_abs_diff(&SampledMembership::sample(&q, max.grid()).unwrap()),
        0.0
    );
    Ok(())
}

pub fn inclusion_reflexive_and_bounded(p: &Tfn, q: &Tfn) -> Check {
    let grid = owadom::lattice::union_grid(p, q, GRID).unwrap();
    let sp = SampledMembership::sample(p, &grid).unwrap();
    let sq = SampledMembership::sample(q, &grid).unwrap();
    if sp.degrees().iter().sum::<f64>() > 0.0 {
        prop_assert!((inclusion_index(&sp, &sp, TNorm::Minimum).unwrap() - 1.0).abs() <= 1e-12);
        for t in [TNorm::Minimum, TNorm::Product] {
            let i = inclusion_index(&sp, &sq, t).unwrap();
            prop_assert!((0.0..=1.0).contains(&i), "{i}");
        }
    }
    Ok(())
}

/// Growing the consequent never lowers the inclusion index.
pub fn inclusion_monotone(p: &Tfn, q: &Tfn, widen: f64) -> Check {
    let wide = Tfn::new(q.a() - widen, q.b(), q.c() + widen).unwrap();
    let grid = owadom::lattice::union_grid(p, &wide, GRID).unwrap();
    let sp = SampledMembership::sample(p, &grid).unwrap();
    if sp.degrees().iter().sum::<f64>() > 0.0 {
        let narrow = inclusion_index(
            &sp,
            &SampledMembership::sample(q, &grid).unwrap(),
            TNorm::Minimum,
        )
        .unwrap();
        let broad = inclusion_index(
            &sp,
            &SampledMembership::sample(&wide, &grid).unwrap(),
            TNorm::Minimum,
        )
        .unwrap();
        prop_assert!(broad >= narrow - 1e-12, "{broad} < {narrow}");
    }
    Ok(())
}

pub fn lattice_ranking_antisymmetric(p: &Tfn, q: &Tfn) -> Check {
    let opts = LatticeOptions::default();
    let pq = rank_lattice_ini(p, q, opts).unwrap();
    let qp = rank_lattice_ini(q, p, opts).unwrap();
    prop_assert_eq!(pq, qp.reverse());
    Ok(())
}

pub fn centroid_linear(p: &Tfn, q: &Tfn, k: f64) -> Check {
    let combo = p.scale(k).unwrap() + *q;
    let expected = k * p.centroid().x0 + q.centroid().x0;
    prop_assert!((combo.centroid().x0 - expected).abs() <= 1e-12);
    Ok(())
}

pub fn generalized_matches_triangular(p: &Tfn) -> Check {
    let g = Gfn::from(*p).centroid(10_001).unwrap();
    let t = p.centroid();
    prop_assert!((g.x0 - t.x0).abs() <= 1e-6, "{} vs {}", g.x0, t.x0);
    prop_assert!((g.y0 - t.y0).abs() <= 1e-6, "{} vs {}", g.y0, t.y0);
    Ok(())
}

pub fn pipeline_deterministic(p: &DecisionProblem) -> Check {
    let seq = to_json(&rank_alternatives_with(p, Exec::Sequential).unwrap());
    let par = to_json(&rank_alternatives_with(p, Exec::Parallel).unwrap());
    let again = to_json(&rank_alternatives(p).unwrap());
    prop_assert_eq!(&seq, &par);
    prop_assert_eq!(&seq, &again);
    Ok(())
}

fn names(p: &DecisionProblem) -> Vec<String> {
    rank_alternatives(p)
        .unwrap()
        .alternatives
        .into_iter()
        .map(|a| a.name)
        .collect()
}

pub fn pipeline_relabeling_invariant(p: &DecisionProblem, rotate: usize) -> Check {
    let q = p.criteria.len();
    let r = rotate % q;
    let mut shuffled = p.clone();
    shuffled.criteria.rotate_left(r);
    for alt in &mut shuffled.alternatives {
        alt.satisfactions.rotate_left(r);
    }
    prop_assert_eq!(names(p), names(&shuffled));
    Ok(())
}

/// An alternative stuck at the worst grade on every criterion is dominated
/// by everything else and must not disturb the existing order.
pub fn pipeline_dominated_addition(p: &DecisionProblem) -> Check {
    let before = names(p);
    let mut bigger = p.clone();
    let worst = p.scale.len() - 1;
    bigger.alternatives.push(Alternative {
        name: "zz-worst".into(),
        satisfactions: vec![UncertainSatisfaction::Certain(worst); p.criteria.len()],
    });
    let after: Vec<String> = names(&bigger)
        .into_iter()
        .filter(|n| n != "zz-worst")
        .collect();
    prop_assert_eq!(before, after);
    Ok(())
}

// ----------------------------------------------------------- suite runner

pub struct Suite {
    pub name: &'static str,
    pub run: fn(&mut TestRunner) -> Result<(), String>,
}

fn vals(q: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0..10.0f64, q)
}

fn report<T: std::fmt::Debug>(
    r: Result<(), proptest::test_runner::TestError<T>>,
) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

/// Every invariant suite, for callers that drive proptest by hand.
pub fn suites() -> Vec<Suite> {
    vec![
        Suite {
            name: "OWA monotonicity",
            run: |r| {
                let s = (1usize..8).prop_flat_map(|q| {
                    (vals(q), prop::collection::vec(0.0..3.0f64, q), weights(q))
                });
                report(r.run(&s, |(a, d, w)| owa_monotone(&a, &d, &w)))
            },
        },
        Suite {
            name: "OWA commutativity",
            run: |r| {
                let s = (1usize..8).prop_flat_map(|q| {
                    (
                        vals(q),
                        Just((0..q).collect::<Vec<_>>()).prop_shuffle(),
                        weights(q),
                    )
                });
                report(r.run(&s, |(a, p, w)| owa_commutative(&a, &p, &w)))
            },
        },
        Suite {
            name: "OWA extremum bounds",
            run: |r| {
                let s = (1usize..8).prop_flat_map(|q| (vals(q), weights(q)));
                report(r.run(&s, |(a, w)| owa_bounded(&a, &w)))
            },
        },
        Suite {
            name: "OWA idempotency and special weight vectors",
            run: |r| {
                let s = (1usize..8).prop_flat_map(|q| (vals(q), -10.0..10.0f64, weights(q)));
                report(r.run(&s, |(a, c, w)| owa_special_weights(&a, c, &w)))
            },
        },
        Suite {
            name: "cumulative validity",
            run: |r| {
                let s = (2usize..9).prop_flat_map(|n| (satisfaction(n), Just(n)));
                report(r.run(&s, |(sat, n)| cumulative_valid(&sat, n)))
            },
        },
        Suite {
            name: "aggregate validity",
            run: |r| {
                let s = (2usize..7, 1usize..6)
                    .prop_flat_map(|(n, q)| (prop::collection::vec(measure(n), q), weights(q)));
                report(r.run(&s, |(m, w)| aggregate_valid(&m, &w)))
            },
        },
        Suite {
            name: "surrogate certainty",
            run: |r| {
                report(r.run(&(any_scale(), 0usize..64), |(s, k)| {
                    surrogate_certainty(&s, k)
                }))
            },
        },
        Suite {
            name: "surrogate consistency with dominance",
            run: |r| {
                let s = (2usize..7).prop_flat_map(|n| (scale(n), measure(n), measure(n)));
                report(r.run(&s, |(sc, a, b)| {
                    surrogate_consistent_with_dominance(&sc, &a, &b)
                }))
            },
        },
        Suite {
            name: "delta weights invert prefix sums",
            run: |r| {
                report(r.run(&(2usize..9).prop_flat_map(measure), |m| {
                    delta_inverts_prefix(&m)
                }))
            },
        },
        Suite {
            name: "dominance transitivity and antisymmetry",
            run: |r| {
                let s = (2usize..5)
                    .prop_flat_map(|n| (coarse_measure(n), coarse_measure(n), coarse_measure(n)));
                report(r.run(&s, |(a, b, c)| dominance_order_laws(&a, &b, &c)))
            },
        },
        Suite {
            name: "lattice idempotency",
            run: |r| report(r.run(&tfn(), |p| lattice_idempotent(&p))),
        },
        Suite {
            name: "lattice commutativity",
            run: |r| report(r.run(&(tfn(), tfn()), |(p, q)| lattice_commutative(&p, &q))),
        },
        Suite {
            name: "lattice disjoint-support exactness",
            run: |r| {
                report(r.run(&(tfn(), 0.001..1.0f64, tfn()), |(p, g, q)| {
                    lattice_disjoint(&p, g, &q)
                }))
            },
        },
        Suite {
            name: "inclusion index reflexivity and range",
            run: |r| {
                report(r.run(&(tfn(), tfn()), |(p, q)| {
                    inclusion_reflexive_and_bounded(&p, &q)
                }))
            },
        },
    ]
}

pub fn run_suite(suite: &Suite, cases: u32) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    (suite.run)(&mut runner)
}

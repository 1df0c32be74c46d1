use std::collections::HashSet;
use std::sync::OnceLock;

use proptest::prelude::*;

use charsum::bounds::{self, nt};
use charsum::subsets::{self, weight};
use charsum::sums::{self, SumSet};
use charsum::{Elt, FieldCtx, MulChar, Poly, RestrictedFamily, SparseSpec, SumAccumulator, TowerParams};

fn fields() -> &'static [FieldCtx] {
    static FIELDS: OnceLock<Vec<FieldCtx>> = OnceLock::new();
    FIELDS.get_or_init(|| {
        [(3, 1, 2), (2, 1, 4), (3, 1, 4), (2, 2, 4), (2, 1, 8), (5, 1, 2), (2, 1, 6)]
            .into_iter()
            .map(|(p, k, r)| FieldCtx::build(TowerParams::new(p, k, r).unwrap()).unwrap())
            .collect()
    })
}

fn field() -> impl Strategy<Value = &'static FieldCtx> {
    (0..fields().len()).prop_map(|i| &fields()[i])
}

fn field_and_elems(count: usize) -> impl Strategy<Value = (&'static FieldCtx, Vec<Elt>)> {
    field().prop_flat_map(move |c| {
        (Just(c), prop::collection::vec((0..c.size() as u32).prop_map(Elt), count))
    })
}

fn family(c: &'static FieldCtx) -> impl Strategy<Value = RestrictedFamily> {
    let q = c.q() as u32;
    prop::collection::vec(prop::collection::btree_set(0..q, 1..=q as usize), c.r() as usize)
        .prop_map(move |sets| RestrictedFamily::new(c, sets.into_iter().map(|s| s.into_iter().collect()).collect()).unwrap())
}

fn split_poly(c: &'static FieldCtx) -> impl Strategy<Value = Poly> {
    prop::collection::vec((0..c.size() as u32).prop_map(Elt), 1..=4).prop_map(move |roots| Poly::from_roots(c, &roots))
}

fn char_index(c: &'static FieldCtx) -> impl Strategy<Value = MulChar> {
    (1..c.order()).prop_map(move |j| MulChar::of_index(c, j).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn frobenius_is_additive_and_fixes_base((c, xs) in field_and_elems(2), j in 1u64..4) {
        let (x, y) = (xs[0], xs[1]);
        let r = c.r();
        let lhs = c.frobenius(c.add(x, y), 1, j).unwrap();
        let rhs = c.add(c.frobenius(x, 1, j).unwrap(), c.frobenius(y, 1, j).unwrap());
        prop_assert_eq!(lhs, rhs);
        for &b in c.base_field() {
            prop_assert_eq!(c.frobenius(b, 1, 1).unwrap(), b);
        }
        prop_assert_eq!(c.frobenius(x, r, 1).unwrap(), x);
    }

    #[test]
    fn coords_combine_inverse((c, xs) in field_and_elems(1)) {
        let coords = c.coords(xs[0]);
        prop_assert_eq!(coords.len(), c.r() as usize);
        prop_assert!(coords.iter().all(|&d| (d as u64) < c.q()));
        prop_assert_eq!(c.combine(&coords).unwrap(), xs[0]);
    }

    #[test]
    fn generator_fails_every_maximal_power(i in 0..7usize) {
        let c = &fields()[i];
        let g = c.generator();
        prop_assert_eq!(c.pow(g, c.order()), Elt::ONE);
        for l in c.order_factorization().primes() {
            prop_assert_ne!(c.pow(g, c.order() / l), Elt::ONE);
        }
    }

    #[test]
    fn characters_are_multiplicative((c, xs) in field_and_elems(2), j in 1u64..1000) {
        let chi = MulChar::of_index(c, j % c.order()).unwrap();
        let (x, y) = (xs[0], xs[1]);
        if !x.is_zero() && !y.is_zero() {
            let a = chi.eval_exponent(c, x).unwrap();
            let b = chi.eval_exponent(c, y).unwrap();
            prop_assert_eq!(chi.eval_exponent(c, c.mul(x, y)).unwrap(), (a + b) % chi.order());
        } else {
            prop_assert_eq!(chi.eval_exponent(c, c.mul(x, y)), None);
        }
    }

    #[test]
    fn accumulator_merge_over_partition(values in prop::collection::vec(prop::option::of(0u64..12), 0..200), cut in 0usize..200) {
        let cut = cut.min(values.len());
        let fill = |vals: &[Option<u64>]| {
            let mut acc = SumAccumulator::new(12);
            for &v in vals {
                acc.push(v);
            }
            acc
        };
        let whole = fill(&values);
        let merged = fill(&values[..cut]).merged(&fill(&values[cut..]));
        prop_assert_eq!(merged, whole);
    }

    #[test]
    fn squarefree_degree_stable_under_powers(c in field(), m in 2u32..4) {
        let f = Poly::from_roots(c, &[Elt::ONE, c.generator()]);
        let g = f.pow(c, m);
        prop_assert_eq!(g.squarefree_degree(c).unwrap(), f.squarefree_degree(c).unwrap());
    }

    #[test]
    fn split_poly_invariants((c, f) in field().prop_flat_map(|c| (Just(c), split_poly(c))), w in any::<u32>()) {
        let roots = f.roots_in_field(c).unwrap();
        prop_assert_eq!(f.squarefree_degree(c).unwrap(), roots.len());
        prop_assert_eq!(roots.iter().map(|r| r.1 as usize).sum::<usize>(), f.degree().unwrap());
        let w = Elt(w % c.size() as u32);
        let g = f.shift(c, w);
        prop_assert_eq!(g.degree(), f.degree());
        prop_assert_eq!(g.squarefree_degree(c).unwrap(), f.squarefree_degree(c).unwrap());
    }

    #[test]
    fn conjugated_roots_symmetric((c, f) in field().prop_flat_map(|c| (Just(c), split_poly(c))), w in any::<(u32, u32)>()) {
        let (w1, w2) = (Elt(w.0 % c.size() as u32), Elt(w.1 % c.size() as u32));
        let half = c.r() / 2;
        prop_assert_eq!(
            f.shares_conjugated_roots(c, w1, w2, half).unwrap(),
            f.shares_conjugated_roots(c, w2, w1, half).unwrap()
        );
    }

    #[test]
    fn enumeration_is_duplicate_free((c, fam) in field().prop_flat_map(|c| (Just(c), family(c)))) {
        let elems: Vec<Elt> = subsets::enumerate_ga(c, &fam).unwrap().collect();
        prop_assert_eq!(elems.len() as u64, fam.size());
        let set: HashSet<Elt> = elems.iter().copied().collect();
        prop_assert_eq!(set.len(), elems.len());
        for x in elems {
            let coords = c.coords(x);
            prop_assert!(coords.iter().zip(fam.sets()).all(|(d, a)| a.contains(d)));
        }
    }

    #[test]
    fn vw_split_is_a_direct_sum((c, fam) in field().prop_flat_map(|c| (Just(c), family(c)))) {
        let (v, w) = subsets::split_vw(c, &fam).unwrap();
        let half = c.r() / 2;
        for &x in &v {
            prop_assert!(c.in_subfield(x, half).unwrap());
        }
        let sums: HashSet<Elt> = v.iter().flat_map(|&a| w.iter().map(move |&b| c.add(a, b))).collect();
        prop_assert_eq!(sums.len(), v.len() * w.len());
        let ga: HashSet<Elt> = subsets::enumerate_ga(c, &fam).unwrap().collect();
        prop_assert_eq!(sums, ga);
    }

    #[test]
    fn sparse_parts_partition(c in field(), s in 1u32..8) {
        let r = c.r();
        let s = 1 + (s - 1) % (r - 1);
        let spec = SparseSpec::new(s, r).unwrap();
        let whole: HashSet<Elt> = subsets::enumerate_sparse(c, &spec).unwrap().collect();
        prop_assert_eq!(whole.len() as u64, spec.size(c.q()));
        let mut seen = HashSet::new();
        for i in 0..=s {
            let (u1, u2) = subsets::split_sparse(c, &spec, i).unwrap();
            for &a in &u1 {
                for &b in &u2 {
                    prop_assert!(seen.insert(c.add(a, b)));
                }
            }
        }
        prop_assert_eq!(seen, whole);
    }

    #[test]
    fn structured_equals_streaming((c, fam, chi, f) in field().prop_flat_map(|c| (Just(c), family(c), char_index(c), split_poly(c)))) {
        let set = SumSet::Restricted(fam);
        let a = sums::char_sum(c, &set, &chi, &f).unwrap();
        let b = sums::char_sum_streaming(c, &set, &chi, &f).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn correlation_magnitude_symmetric((c, chi, f) in field().prop_flat_map(|c| (Just(c), char_index(c), split_poly(c))), w in any::<(u32, u32)>()) {
        let (w1, w2) = (Elt(w.0 % c.size() as u32), Elt(w.1 % c.size() as u32));
        let a = sums::correlation_sum(c, w1, w2, &chi, &f).unwrap();
        let b = sums::correlation_sum(c, w2, w1, &chi, &f).unwrap();
        prop_assert!((a.result.magnitude - b.result.magnitude).abs() <= 1e-9);
    }

    #[test]
    fn eta_prime_at_least_h(rho in 0.001f64..=0.5) {
        let eta = bounds::eta_prime(rho).unwrap();
        let floor = 0.5 * bounds::entropy(rho).unwrap() + 0.25;
        prop_assert!(eta.value >= floor - 1e-12);
        let p = bounds::fgh(rho, eta.lambda).unwrap();
        prop_assert!(p.max() >= p.h);
    }

    #[test]
    fn phi_matches_product_formula(t in 1u64..10_000) {
        let fact = nt::factorize(t).unwrap();
        let product = fact.primes().fold(t as f64, |acc, p| acc * (1.0 - 1.0 / p as f64));
        prop_assert!((fact.euler_phi() as f64 - product).abs() < 1e-6);
    }
}

#[test]
fn weight_complement_for_q2() {
    for r in [4u32, 6] {
        let c = FieldCtx::build(TowerParams::new(2, 1, r).unwrap()).unwrap();
        let all_ones = c.basis().iter().fold(Elt::ZERO, |acc, &a| c.add(acc, a));
        for x in c.elements() {
            assert_eq!(weight(&c, c.add(x, all_ones)), r - weight(&c, x));
        }
    }
}

#[test]
fn eta_prime_refinement_against_denser_grid() {
    for i in 0..50 {
        let rho = 0.01 + 0.0098 * i as f64;
        let eta = bounds::eta_prime(rho).unwrap().value;
        let dense = bounds::eta_prime_on_lambda_lattice(rho, 1e-6).unwrap().value;
        assert!((eta - dense).abs() <= 1e-6, "rho = {rho}: {eta} vs {dense}");
    }
}

#[test]
fn thresholds_certified_for_prime_powers() {
    for q in [7u64, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 32] {
        let t = bounds::threshold_min_even_r::<charsum::Extended>(q).unwrap();
        assert!(t.certified, "q = {q}");
        assert!(bounds::threshold_lhs::<f64>(q, t.r_min) <= bounds::threshold_rhs::<f64>(q));
        assert!(bounds::threshold_lhs::<f64>(q, t.r_min - 2) > bounds::threshold_rhs::<f64>(q));
    }
}

#[test]
fn characters_per_order_count_phi() {
    for c in &fields()[..3] {
        for e in c.order_factorization().divisors() {
            let n = charsum::characters_of_order(c, e).unwrap().len() as u64;
            assert_eq!(n, nt::euler_phi(e).unwrap());
        }
    }
}

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use strucalg::algebra::indexed_names;
use strucalg::automorphisms::lift_aut_triangular;
use strucalg::bch::BchGroup;
use strucalg::constructions::{field_algebra, heisenberg, triangular, trivial_mult, BilinearAction, Construction};
use strucalg::derivations::{derivation_matrix, derivation_space, is_derivation, scalar_to_delta};
use strucalg::finite::FiniteRing;
use strucalg::invariants::annihilator_full;
use strucalg::local_rings::{idempotent_decomposition, mult_representatives};
use strucalg::{verify_automorphism, Algebra, Element, FieldSpec, Matrix, Scalar, Subspace};

fn fields() -> Vec<FieldSpec> {
    vec![
        FieldSpec::rationals(),
        FieldSpec::prime(7).unwrap(),
        FieldSpec::galois(3, 2).unwrap(),
        FieldSpec::galois(2, 3).unwrap(),
        FieldSpec::rational_functions_q(),
        FieldSpec::rational_functions_fp(5).unwrap(),
    ]
}

fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop::sample::select(fields())
}

fn scalars(f: &FieldSpec, seed: u64, n: usize) -> Vec<Scalar> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| f.random(&mut rng)).collect()
}

fn random_matrix(f: &FieldSpec, seed: u64, rows: usize, cols: usize) -> Matrix {
    let s = scalars(f, seed, rows * cols);
    Matrix::from_rows_with_width(f, cols, s.chunks(cols).map(<[Scalar]>::to_vec).collect())
}

fn random_element(a: &Algebra, seed: u64) -> Element {
    Element::new(scalars(a.field(), seed, a.dim()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(f in field_strategy(), seed in any::<u64>()) {
        let v = scalars(&f, seed, 3);
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(f.add(&f.add(a, b), c), f.add(a, &f.add(b, c)));
        prop_assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
        prop_assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert!(f.is_zero(&f.add(a, &f.neg(a))));
        if !f.is_zero(a) {
            prop_assert!(f.is_one(&f.mul(a, &f.inv(a).unwrap())));
        } else {
            prop_assert!(f.inv(a).is_none());
        }
        prop_assert_eq!(&f.parse(&f.format(a)).unwrap(), a);
        if f.has_derivation() {
            let lhs = f.derive(&f.mul(a, b));
            let rhs = f.add(&f.mul(&f.derive(a), b), &f.mul(a, &f.derive(b)));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn finite_field_index_round_trip(seed in any::<u64>()) {
        for f in [FieldSpec::galois(3, 2).unwrap(), FieldSpec::galois(2, 3).unwrap(), FieldSpec::prime(7).unwrap()] {
            let a = &scalars(&f, seed, 1)[0];
            prop_assert_eq!(&f.element_at(f.index_of(a)), a);
            let q = f.size().unwrap();
            prop_assert_eq!(f.pow(a, q), a.clone());
        }
    }

    #[test]
    fn rank_nullity(f in field_strategy(), seed in any::<u64>(), rows in 1usize..5, cols in 1usize..5) {
        let m = random_matrix(&f, seed, rows, cols);
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.dim(), cols);
        for v in k.basis_vectors() {
            prop_assert!(m.mul_vec(&v).iter().all(|x| f.is_zero(x)));
        }
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn inverse_is_two_sided(f in field_strategy(), seed in any::<u64>(), n in 1usize..5) {
        let m = random_matrix(&f, seed, n, n);
        match m.inverse() {
            Some(inv) => {
                prop_assert_eq!(m.mul(&inv), Matrix::identity(&f, n));
                prop_assert_eq!(inv.mul(&m), Matrix::identity(&f, n));
            }
            None => prop_assert!(m.rank() < n),
        }
    }

    #[test]
    fn subspace_dimension_formula(f in field_strategy(), seed in any::<u64>(), k in 0usize..4, l in 0usize..4) {
        let n = 4;
        let u = Subspace::from_matrix(&random_matrix(&f, seed, k, n));
        let v = Subspace::from_matrix(&random_matrix(&f, seed ^ 0x9e37, l, n));
        let sum = u.sum(&v).unwrap();
        let meet = u.intersect(&v).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + v.dim());
        prop_assert!(sum.contains_subspace(&u).unwrap() && u.contains_subspace(&meet).unwrap());
        let reversed = Subspace::span(&f, n, u.basis_vectors().into_iter().rev());
        prop_assert_eq!(reversed, u);
    }

    #[test]
    fn derivations_close_under_commutator(seed in any::<u64>()) {
        let q = FieldSpec::rationals();
        let h = heisenberg(&q, 1).unwrap().algebra;
        let der = derivation_space(&h).unwrap();
        let c1 = scalars(&q, seed, der.dim());
        let c2 = scalars(&q, seed.wrapping_add(1), der.dim());
        let d1 = derivation_matrix(&h, &der.combine(&c1));
        let d2 = derivation_matrix(&h, &der.combine(&c2));
        prop_assert!(is_derivation(&h, &d1));
        prop_assert!(is_derivation(&h, &d1.mul(&d2).sub(&d2.mul(&d1))));
    }

    #[test]
    fn bch_group_laws(seed in any::<u64>(), n in 1usize..3) {
        let q = FieldSpec::rationals();
        let h = heisenberg(&q, n).unwrap().algebra;
        let g = BchGroup::new(&h).unwrap();
        let (x, y, z) = (random_element(&h, seed), random_element(&h, seed ^ 1), random_element(&h, seed ^ 2));
        prop_assert_eq!(g.star(&g.star(&x, &y), &z), g.star(&x, &g.star(&y, &z)));
        prop_assert_eq!(g.star(&x, &g.inverse(&x)), g.identity());
        prop_assert_eq!(g.group_commutator(&x, &y), h.mul(&x, &y));
        prop_assert_eq!(g.recovered_sum(&x, &y), h.add(&x, &y));
        prop_assert_eq!(g.power(&x, 4), h.scale(&q.from_int(4), &x));
    }

    #[test]
    fn serialization_round_trip(f in field_strategy(), seed in any::<u64>(), d in 1usize..4) {
        let s = scalars(&f, seed, d * d * d);
        let mut b = strucalg::AlgebraBuilder::new(&f, indexed_names("e", d));
        for (idx, c) in s.iter().enumerate() {
            b.add(idx / (d * d), (idx / d) % d, idx % d, c);
        }
        let a = b.build();
        let text = a.to_json();
        let back = Algebra::from_json(&text).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_json(), text);
    }

    #[test]
    fn axioms_invariant_under_change_of_basis(seed in any::<u64>()) {
        let f = FieldSpec::prime(5).unwrap();
        let algebras = [
            heisenberg(&f, 1).unwrap().algebra,
            strucalg::constructions::truncated_poly(&f, 3).unwrap().algebra,
            strucalg::constructions::matrix_lie(&f, 2).unwrap().algebra,
        ];
        for a in algebras {
            let p = random_matrix(&f, seed, a.dim(), a.dim());
            prop_assume!(p.is_invertible());
            let b = a.change_basis(&p, indexed_names("v", a.dim())).unwrap();
            let (x, y) = (a.axioms(), b.axioms());
            prop_assert_eq!(
                (x.commutative, x.anticommutative, x.associative, x.alternating, x.jacobi, x.two_step_nilpotent),
                (y.commutative, y.anticommutative, y.associative, y.alternating, y.jacobi, y.two_step_nilpotent)
            );
            prop_assert_eq!(x.unit.is_some(), y.unit.is_some());
            prop_assert_eq!(x.nilpotency_index, y.nilpotency_index);
            prop_assert_eq!(annihilator_full(&a).dim(), annihilator_full(&b).dim());
        }
    }

    #[test]
    fn scalar_lifts_are_automorphisms(seed in any::<u64>(), dim in 1usize..4) {
        let f = FieldSpec::rational_functions_q();
        let v = trivial_mult(&f, dim).algebra;
        let lam: Construction = triangular(&field_algebra(&f), &v, &BilinearAction::scalar(&f, dim)).unwrap();
        let x0 = Element::new(scalars(&f, seed, dim));
        prop_assume!(x0.coords().iter().any(|c| !f.is_zero(c)));
        let sigma = lift_aut_triangular(&lam, &scalar_to_delta(&lam, &x0).unwrap()).unwrap();
        prop_assert!(verify_automorphism(&lam.algebra, &sigma));
        let one = lam.algebra.find_unit().unwrap();
        prop_assert_eq!(sigma.apply_element(&one), one);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cyclic_rings_split_into_prime_power_factors(n in 2u64..400) {
        let r = FiniteRing::cyclic(n).unwrap();
        let d = idempotent_decomposition(&r).unwrap();
        prop_assert!(d.holds());
        let mut primes = Vec::new();
        let mut m = n;
        let mut q = 2;
        while m > 1 {
            if m % q == 0 {
                let mut pk = 1;
                while m % q == 0 {
                    m /= q;
                    pk *= q;
                }
                primes.push(pk);
            }
            q += 1;
        }
        let mut sizes: Vec<u64> = d.factors.iter().map(|f| f.size as u64).collect();
        sizes.sort_unstable();
        primes.sort_unstable();
        prop_assert_eq!(sizes, primes);
    }

    #[test]
    fn representatives_in_prime_power_rings(p in prop::sample::select(vec![2u64, 3, 5, 7]), k in 1u32..4) {
        let n = p.pow(k);
        let r = FiniteRing::cyclic(n).unwrap();
        let t = mult_representatives(&r, k).unwrap();
        prop_assert!(t.holds());
        prop_assert_eq!(t.set.len() as u64, p);
        for x in &t.set {
            prop_assert_eq!(r.pow(x, p).unwrap(), x.clone());
        }
    }
}

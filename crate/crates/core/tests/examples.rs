//! Worked examples through the public API.

use num_bigint::BigInt;
use num_traits::One;

use abundancy::abundancy::{
    abundancy_index, index_lower_bound_from_square, prime_power_index, sandwich_check,
    square_index_relation, x_exponent, x_prime_power, SandwichStatus,
};
use abundancy::arith::{
    factorize, gcd, is_perfect, omega, sigma, sigma_oracle, valuation, Factorization, Natural,
};
use abundancy::even_perfect::{even_perfect_from_exponent, lucas_lehmer, mersenne_scan};
use abundancy::interval::{ln_ratio, pow, Comparison, IntervalReal, PrecisionConfig};
use abundancy::opn::{
    acquaah_konyagin_holds, lemma4_predicates, residual_case_classify, theorem2_lower_bound,
    validate_eulerian, CheckStatus, EulerianCandidate, ResidualCase,
};
use abundancy::ratio::{parse_ratio, ratio, Ratio};
use abundancy::Error;

fn nat(v: u64) -> Natural {
    Natural::from(v)
}

fn f(s: &str) -> Factorization {
    s.parse().unwrap()
}

fn cfg() -> PrecisionConfig {
    PrecisionConfig::default()
}

/// `x` lies within `10^-k` of the decimal `v`.
fn near(x: &IntervalReal, v: &str, k: usize) -> bool {
    let eps = Ratio::new(BigInt::one(), num_traits::pow(BigInt::from(10), k));
    let v = parse_ratio(v).unwrap();
    x.compare_ratio(&(&v - &eps)) == Comparison::Greater
        && x.compare_ratio(&(&v + &eps)) == Comparison::Less
}

#[test]
fn arithmetic() {
    assert_eq!(gcd(&nat(5), &nat(9)), nat(1));
    assert_eq!(omega(&f("45")), 2);
    assert_eq!(valuation(&nat(3), &f("45")), 2);
    assert_eq!(factorize(&nat(45)).unwrap().to_string(), "3^2*5");
    assert!(factorize(&nat(1)).unwrap().is_one());
    assert_eq!(factorize(&nat(8191)).unwrap().to_string(), "8191");
    assert!(matches!(factorize(&nat(0)), Err(Error::Zero)));

    assert_eq!(sigma(&f("3^2")), nat(13));
    assert_eq!(sigma(&Factorization::one()), nat(1));
    assert_eq!(sigma(&f("3^2*5")), nat(78));
    for (n, s) in [(6, 12), (1, 1), (496, 992)] {
        assert_eq!(sigma_oracle(&nat(n)).unwrap(), nat(s));
    }
    assert!(is_perfect(&nat(6)).unwrap());
    assert!(is_perfect(&nat(28)).unwrap());
    assert!(!is_perfect(&nat(45)).unwrap());
}

#[test]
fn logarithms_and_powers() {
    let bits = 256;
    let zero = ln_ratio(&ratio(1, 1), bits).unwrap();
    assert_eq!(zero.lo(), Ratio::from_integer(0.into()));
    assert_eq!(zero.hi(), Ratio::from_integer(0.into()));
    assert_eq!(
        zero.compare_ratio(&Ratio::from_integer(0.into())),
        Comparison::Undecided
    );

    let l43 = ln_ratio(&ratio(4, 3), bits).unwrap();
    assert!(near(&l43, "0.28768207245178092743921900599", 28));
    assert_eq!(l43.compare_ratio(&ratio(1, 3)), Comparison::Less);
    let l139 = ln_ratio(&ratio(13, 9), bits).unwrap();
    assert!(near(&l139, "0.36772478012531735326299696772", 28));

    let exponent = l43.div(&l139).unwrap();
    let b = pow(&IntervalReal::from_ratio(&ratio(8, 5), bits), &exponent).unwrap();
    assert!(near(&b, "1.44440557", 8));

    let root2 = pow(
        &IntervalReal::from_integer(2, bits),
        &IntervalReal::from_ratio(&ratio(1, 2), bits),
    )
    .unwrap();
    assert!(near(&root2, "1.4142135623730950488", 18));
    assert_eq!(
        root2.square().compare_ratio(&ratio(2, 1)),
        Comparison::Undecided
    );
}

#[test]
fn abundancy_indices() {
    assert_eq!(abundancy_index(&f("3")), ratio(4, 3));
    assert_eq!(abundancy_index(&Factorization::one()), ratio(1, 1));
    assert_eq!(abundancy_index(&f("25")), ratio(31, 25));
    assert_eq!(prime_power_index(&nat(3), 2).unwrap(), ratio(13, 9));
    assert_eq!(prime_power_index(&nat(5), 1).unwrap(), ratio(6, 5));
    for (r, s, v) in [
        (3, 1, ratio(13, 9)),
        (5, 1, ratio(31, 25)),
        (3, 2, ratio(121, 81)),
    ] {
        let (direct, product) = square_index_relation(&nat(r), s).unwrap();
        assert_eq!(direct, v);
        assert_eq!(product, v);
    }
}

#[test]
fn exponents() {
    let c = cfg();
    assert!(near(&x_exponent(&f("3"), &c).unwrap().value, "1.27823", 5));
    assert!(near(
        &x_exponent(&f("5"), &c).unwrap().value,
        "1.1798461103535185888528",
        20
    ));
    assert!(x_exponent(&Factorization::one(), &c).is_err());
    assert!(near(
        &x_prime_power(&nat(3), 2, &c).unwrap().value,
        "1.0914178554611650745770",
        20
    ));

    let o = sandwich_check(&f("3"), &f("5"), &c).unwrap();
    assert_eq!(o.status, SandwichStatus::Holds);
    assert!(near(&o.x_ab, "1.2400673600703925856268", 20));
    let o = sandwich_check(&f("9"), &f("5"), &c).unwrap();
    assert_eq!(o.status, SandwichStatus::Holds);
    assert!(near(&o.x_ab, "1.1207287989479367022042", 20));
    assert!(matches!(
        sandwich_check(&f("3"), &f("9"), &c),
        Err(Error::NotCoprime(_))
    ));

    let b = index_lower_bound_from_square(&ratio(8, 5), &nat(5), &c).unwrap();
    assert!(near(&b, "1.4893802777926719393604", 20));
    assert!(index_lower_bound_from_square(&ratio(1, 1), &nat(3), &c).is_err());
}

#[test]
fn candidates() {
    let c = cfg();
    let check =
        |line: &str| validate_eulerian(&line.parse::<EulerianCandidate>().unwrap(), &c).unwrap();
    let r = check("q=5 k=1 n=3");
    assert_eq!(
        r.get("size_above_10_1500").unwrap().status,
        CheckStatus::Fail
    );
    assert_eq!(
        r.get("omega_at_least_10").unwrap().status,
        CheckStatus::Fail
    );
    let perfection = r.get("perfection").unwrap();
    assert_eq!(perfection.status, CheckStatus::Fail);
    assert!(perfection.witness.contains("26/15"));

    let r = check("q=13 k=1 n=9");
    for name in ["q_prime", "q_mod_4", "gcd_q_n", "n_odd"] {
        assert_eq!(r.get(name).unwrap().status, CheckStatus::Pass, "{name}");
    }
    assert_eq!(
        r.get("size_above_10_1500").unwrap().status,
        CheckStatus::Fail
    );

    let r = check("q=5 k=2 n=3");
    assert_eq!(r.get("k_mod_4").unwrap().status, CheckStatus::Fail);

    assert!(acquaah_konyagin_holds(&nat(5), &nat(3)));
    assert!(!acquaah_konyagin_holds(&nat(13), &nat(7)));
    assert!(acquaah_konyagin_holds(&nat(13), &nat(8)));

    let l = |line: &str| lemma4_predicates(&line.parse().unwrap()).unwrap();
    let o = l("q=5 k=1 n=9");
    assert!(o.p1 && o.p2 && o.p3);
    let o = l("q=13 k=1 n=9");
    assert!(!o.p1 && !o.p2 && !o.p3);
    let o = l("q=5 k=1 n=3");
    assert!(!o.p1 && !o.p2 && !o.p3);
}

#[test]
fn theorem2_and_classes() {
    let f55 = theorem2_lower_bound(&nat(5), &nat(5), &cfg()).unwrap();
    assert!(near(&f55, "2.7418138305372914375731", 20));
    let f53 = theorem2_lower_bound(&nat(5), &nat(3), &cfg()).unwrap();
    assert!(near(&f53, "2.6912789897463723558019", 20));

    assert_eq!(
        residual_case_classify(&nat(5)).unwrap().case,
        ResidualCase::CaseQ5
    );
    assert_eq!(
        residual_case_classify(&nat(17)).unwrap().case,
        ResidualCase::Case5Mod12
    );
    assert_eq!(
        residual_case_classify(&nat(13)).unwrap().case,
        ResidualCase::Case1Mod12
    );
    assert!(residual_case_classify(&nat(7)).is_err());
}

#[test]
fn even_perfect_numbers() {
    assert!(lucas_lehmer(3).unwrap());
    assert!(!lucas_lehmer(11).unwrap());
    assert!(lucas_lehmer(13).unwrap());
    for (p, v) in [(2, 6u64), (3, 28), (5, 496)] {
        assert_eq!(even_perfect_from_exponent(p).unwrap().perfect, nat(v));
    }
    assert_eq!(mersenne_scan(20).unwrap(), vec![2, 3, 5, 7, 13, 17, 19]);
    assert_eq!(mersenne_scan(2).unwrap(), vec![2]);
}

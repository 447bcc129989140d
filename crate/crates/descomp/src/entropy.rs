//! Equivalence-class partitions with exact sizes, Boltzmann/Shannon
//! entropies and the complementarity identity, plus the expected-entropy
//! estimation toolkit (window masses, the limit function `f`, Stirling gap,
//! law-of-large-numbers sampling).
//!
//! All counts and probabilities are exact integers/rationals; floating
//! point enters only at the final logarithms.

use crate::error::{Error, Result};
use crate::model::{compositions, TypeCountVector, TypeSet};
use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Working cap on the number of classes in a generated partition.
pub const CLASS_CAP: usize = 2_000_000;

/// Identifier of an equivalence class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassId {
    Mlu(TypeSet),
    Gmlu(TypeCountVector),
    Fo(String),
}

impl ClassId {
    pub fn render(&self) -> String {
        match self {
            ClassId::Mlu(ts) => ts.render(),
            ClassId::Gmlu(cv) => cv.render(),
            ClassId::Fo(s) => s.clone(),
        }
    }
}

/// A partition of a finite model universe into classes with exact sizes.
#[derive(Debug, Clone)]
pub struct Partition {
    universe_size: BigUint,
    classes: Vec<(ClassId, BigUint)>,
}

impl Partition {
    pub fn new(universe_size: BigUint, classes: Vec<(ClassId, BigUint)>) -> Result<Self> {
        let total: BigUint = classes.iter().map(|(_, s)| s).sum();
        if total != universe_size {
            return Err(Error::InvalidInput(format!(
                "class sizes sum to {total}, universe has {universe_size}"
            )));
        }
        if classes.iter().any(|(_, s)| s.is_zero()) {
            return Err(Error::InvalidInput("empty class in partition".into()));
        }
        Ok(Self { universe_size, classes })
    }

    pub fn universe_size(&self) -> &BigUint {
        &self.universe_size
    }

    pub fn classes(&self) -> &[(ClassId, BigUint)] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn probability(&self, index: usize) -> BigRational {
        BigRational::new(
            BigInt::from(self.classes[index].1.clone()),
            BigInt::from(self.universe_size.clone()),
        )
    }
}

/// Per-class statistics row.
#[derive(Debug, Clone)]
pub struct ClassStats {
    pub id: ClassId,
    pub size: BigUint,
    pub probability: BigRational,
    pub boltzmann_bits: f64,
    pub c_lower: Option<u64>,
    pub c_upper: Option<u64>,
    pub c_exact: Option<u64>,
}

/// Entropy summary of a partition.
#[derive(Debug, Clone, Copy)]
pub struct EntropyStats {
    pub shannon_bits: f64,
    pub expected_boltzmann_bits: f64,
    pub log_universe_bits: f64,
    /// `shannon + expected_boltzmann - log_universe`; zero up to rounding.
    pub identity_residual: f64,
}

fn check_partition_caps(k: usize, n: u32) -> Result<()> {
    if k == 0 || n == 0 {
        return Err(Error::InvalidInput("k and n must be at least 1".into()));
    }
    if k > 4 || n > 200 {
        return Err(Error::CapExceeded(format!(
            "partitions are generated for k <= 4, n <= 200; got k={k}, n={n}"
        )));
    }
    Ok(())
}

/// `log2` of an exact positive integer.
pub fn log2_biguint(x: &BigUint) -> f64 {
    debug_assert!(!x.is_zero());
    let bits = x.bits();
    if bits <= 63 {
        return (x.to_u64().unwrap() as f64).log2();
    }
    // top 63 bits as mantissa, rest as exponent
    let shift = bits - 63;
    let top = (x >> shift).to_u64().unwrap();
    (top as f64).log2() + shift as f64
}

fn rational_to_f64(r: &BigRational) -> f64 {
    // sign-aware log-space conversion keeps huge numerators/denominators safe
    if r.is_zero() {
        return 0.0;
    }
    let sign = if r.numer().sign() == Sign::Minus { -1.0 } else { 1.0 };
    let num = r.numer().magnitude();
    let den = r.denom().magnitude();
    sign * (log2_biguint(num) - log2_biguint(den)).exp2()
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Exact multinomial coefficient `n! / (parts_1! .. parts_l!)`.
pub fn multinomial(parts: &[u32]) -> BigUint {
    let mut acc = BigUint::one();
    let mut seen = 0u64;
    for &p in parts {
        for i in 1..=u64::from(p) {
            seen += 1;
            acc = acc * BigUint::from(seen) / BigUint::from(i);
        }
    }
    acc
}

/// Number of surjections from `n` labeled points onto `a` labeled types,
/// by inclusion-exclusion.
pub fn surjection_count(a: u32, n: u32) -> BigUint {
    let mut acc = BigInt::zero();
    for j in 0..=a {
        let term = BigInt::from(binomial(u64::from(a), u64::from(j)))
            * BigInt::from(u64::from(a - j)).pow(n);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    debug_assert!(!acc.is_negative());
    acc.to_biguint().unwrap_or_default()
}

/// MLU partition of `Mod_n` over `k` propositions: one class per nonempty
/// realizable type set (realizable iff `|set| <= n`), ascending by mask.
pub fn mlu_partition(k: usize, n: u32) -> Result<Partition> {
    check_partition_caps(k, n)?;
    let universe = BigUint::from(1u32 << k).pow(n);
    let mut classes = Vec::new();
    for mask in 1u32..(1u32 << (1usize << k)) {
        let a = mask.count_ones();
        if a > n {
            continue;
        }
        classes.push((
            ClassId::Mlu(TypeSet::new(k, mask)),
            surjection_count(a, n),
        ));
    }
    Partition::new(universe, classes)
}

/// GMLU partition of `Mod_n`: one class per count vector, ascending
/// lexicographic; sizes are multinomial coefficients.
pub fn gmlu_partition(k: usize, n: u32) -> Result<Partition> {
    check_partition_caps(k, n)?;
    let class_count = binomial(u64::from(n) + (1u64 << k) - 1, (1u64 << k) - 1);
    if class_count > BigUint::from(CLASS_CAP) {
        return Err(Error::CapExceeded(format!(
            "GMLU partition would have {class_count} classes"
        )));
    }
    let universe = BigUint::from(1u32 << k).pow(n);
    let classes = compositions(k, n)
        .into_iter()
        .map(|cv| {
            let size = multinomial(cv.counts());
            (ClassId::Gmlu(cv), size)
        })
        .collect();
    Partition::new(universe, classes)
}

/// Shannon entropy, expected Boltzmann entropy and their sum check:
/// `H_S + <H_B> = log2 |universe|`.
pub fn entropy_stats(p: &Partition) -> EntropyStats {
    let log_universe = log2_biguint(p.universe_size());
    let mut shannon = 0.0;
    let mut expected_hb = 0.0;
    for (i, (_, size)) in p.classes().iter().enumerate() {
        let prob = rational_to_f64(&p.probability(i));
        shannon -= prob * prob.log2();
        expected_hb += prob * log2_biguint(size);
    }
    EntropyStats {
        shannon_bits: shannon,
        expected_boltzmann_bits: expected_hb,
        log_universe_bits: log_universe,
        identity_residual: shannon + expected_hb - log_universe,
    }
}

/// Per-class statistics for a partition (complexity fields unset).
pub fn class_stats(p: &Partition) -> Vec<ClassStats> {
    p.classes()
        .iter()
        .enumerate()
        .map(|(i, (id, size))| ClassStats {
            id: id.clone(),
            size: size.clone(),
            probability: p.probability(i),
            boltzmann_bits: log2_biguint(size),
            c_lower: None,
            c_upper: None,
            c_exact: None,
        })
        .collect()
}

/// `<H_B> / (k n)` for the GMLU partition, exact up to the final logarithms.
pub fn expected_boltzmann_ratio(k: usize, n: u32) -> Result<f64> {
    let p = gmlu_partition(k, n)?;
    Ok(entropy_stats(&p).expected_boltzmann_bits / (k as f64 * f64::from(n)))
}

/// Parse a decimal string like `0.1` into an exact rational.
pub fn parse_decimal_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("bad decimal '{s}'"));
    let (int_part, frac_part) = match s.split_once('.') {
        Some((i, f)) => (i, f),
        None => (s, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let digits: String = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().map_err(|_| bad())?;
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    Ok(BigRational::new(numer, denom))
}

/// Exact probability mass of the count vectors whose per-type frequencies
/// all lie strictly within `delta` of the uniform value `2^-k`.
pub fn i_delta_mass(k: usize, n: u32, delta: &BigRational) -> Result<BigRational> {
    if delta <= &BigRational::zero() {
        return Err(Error::Domain("delta must be positive".into()));
    }
    check_partition_caps(k, n)?;
    let class_count = binomial(u64::from(n) + (1u64 << k) - 1, (1u64 << k) - 1);
    if class_count > BigUint::from(CLASS_CAP) {
        return Err(Error::CapExceeded(format!(
            "window mass would scan {class_count} classes"
        )));
    }
    let l = BigInt::from(1u64 << k);
    let nn = BigInt::from(n);
    let universe = BigInt::from(BigUint::from(1u32 << k).pow(n));
    let mut mass_num = BigInt::zero();
    for cv in compositions(k, n) {
        let inside = cv.counts().iter().all(|&c| {
            // |c/n - 1/l| < delta  <=>  |c*l - n| * den < num * n * l
            let diff = (BigInt::from(c) * &l - &nn).abs();
            diff * delta.denom() < delta.numer() * &nn * &l
        });
        if inside {
            mass_num += BigInt::from(multinomial(cv.counts()));
        }
    }
    Ok(BigRational::new(mass_num, universe))
}

/// The lower-bound limit function
/// `f(d) = 2^k (2^-k - d) log2(2^k / (1 + d 2^k)) (1 - d)`,
/// defined for `0 <= d < 2^-k`; `f(0) = k` and `f -> k` as `d -> 0`.
pub fn f_delta(k: usize, delta: f64) -> Result<f64> {
    let l = (1u64 << k) as f64;
    if !(0.0..(1.0 / l)).contains(&delta) {
        return Err(Error::Domain(format!(
            "delta must satisfy 0 <= delta < 2^-{k}"
        )));
    }
    Ok(l * (1.0 / l - delta) * (l / (1.0 + delta * l)).log2() * (1.0 - delta))
}

/// Exact probability that a uniformly random model misses some 1-type,
/// together with the floating-point union bound `2^k (1 - 2^-k)^n`.
pub fn missing_type_probability(k: usize, n: u32) -> Result<(BigRational, f64)> {
    check_partition_caps(k, n)?;
    let l = 1u32 << k;
    let universe = BigUint::from(l).pow(n);
    let all_realized = surjection_count(l, n);
    let exact = BigRational::new(
        BigInt::from(&universe - &all_realized),
        BigInt::from(universe),
    );
    let union_bound = (l as f64) * (1.0 - 1.0 / l as f64).powi(n as i32);
    Ok((exact, union_bound))
}

/// `log2(n!) - (n log2 n - n log2 e)`: the gap taken up by the logarithmic
/// correction term in the factorial approximation.
pub fn stirling_gap(n: u64) -> f64 {
    let log2_fact = libm::lgamma(n as f64 + 1.0) / std::f64::consts::LN_2;
    let nf = n as f64;
    log2_fact - (nf * nf.log2() - nf * std::f64::consts::E.log2())
}

/// Samples `trials` uniformly random models of size `n` and reports the mean
/// over trials of the worst per-type frequency deviation from `2^-k`.
/// Deterministic for a fixed seed.
pub fn lln_demo(k: usize, n: u32, trials: u32, seed: u64) -> Result<f64> {
    if k == 0 || n == 0 || trials == 0 {
        return Err(Error::InvalidInput("k, n and trials must be at least 1".into()));
    }
    if k > 16 {
        return Err(Error::CapExceeded("sampling needs k <= 16".into()));
    }
    let l = 1usize << k;
    let uniform = 1.0 / l as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total = 0.0;
    for _ in 0..trials {
        let mut counts = vec![0u64; l];
        for _ in 0..n {
            counts[rng.random_range(0..l)] += 1;
        }
        let worst = counts
            .iter()
            .map(|&c| (c as f64 / f64::from(n) - uniform).abs())
            .fold(0.0, f64::max);
        total += worst;
    }
    Ok(total / f64::from(trials))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::enumerate_kripke;

    #[test]
    fn mlu_partition_small() {
        // k=1, n=3: |M_full| = 2^3 - 2 = 6, singletons 1 each, total 8
        let p = mlu_partition(1, 3).unwrap();
        assert_eq!(p.len(), 3);
        let sizes: Vec<u64> = p
            .classes()
            .iter()
            .map(|(_, s)| s.to_u64().unwrap())
            .collect();
        // ascending mask order: {p1}, {!p1}, {p1,!p1}
        assert_eq!(sizes, vec![1, 1, 6]);
        assert_eq!(p.universe_size(), &BigUint::from(8u32));
    }

    #[test]
    fn mlu_class_counts_match_formula() {
        // 2^{2^k} - 1 classes once n is large enough to realize them all
        assert_eq!(mlu_partition(1, 8).unwrap().len(), 3);
        assert_eq!(mlu_partition(2, 8).unwrap().len(), 15);
        assert_eq!(mlu_partition(3, 8).unwrap().len(), 255);
    }

    #[test]
    fn mlu_sizes_match_enumeration() {
        for k in 1..=2usize {
            for n in 1..=4u32 {
                let p = mlu_partition(k, n).unwrap();
                let mut counted = vec![0u64; p.len()];
                for m in enumerate_kripke(k, n as usize).unwrap() {
                    let (ts, _) = m.classify();
                    let idx = p
                        .classes()
                        .iter()
                        .position(|(id, _)| matches!(id, ClassId::Mlu(t) if *t == ts))
                        .unwrap();
                    counted[idx] += 1;
                }
                for (i, (_, size)) in p.classes().iter().enumerate() {
                    assert_eq!(BigUint::from(counted[i]), *size);
                }
            }
        }
    }

    #[test]
    fn singleton_type_set_has_one_model() {
        let p = mlu_partition(2, 5).unwrap();
        for (id, size) in p.classes() {
            if let ClassId::Mlu(ts) = id {
                if ts.len() == 1 {
                    assert_eq!(size, &BigUint::one());
                }
            }
        }
    }

    #[test]
    fn gmlu_partition_small() {
        let p = gmlu_partition(1, 3).unwrap();
        // ascending: [0,3], [1,2], [2,1], [3,0]
        let sizes: Vec<u64> = p.classes().iter().map(|(_, s)| s.to_u64().unwrap()).collect();
        assert_eq!(sizes, vec![1, 3, 3, 1]);
        assert_eq!(multinomial(&[1, 1, 1, 1]).to_u64().unwrap(), 24);
        assert_eq!(multinomial(&[4, 0, 0, 0]).to_u64().unwrap(), 1);
    }

    #[test]
    fn gmlu_sizes_match_enumeration() {
        for k in 1..=2usize {
            for n in 1..=4u32 {
                let p = gmlu_partition(k, n).unwrap();
                let mut counted = vec![0u64; p.len()];
                for m in enumerate_kripke(k, n as usize).unwrap() {
                    let (_, cv) = m.classify();
                    let idx = p
                        .classes()
                        .iter()
                        .position(|(id, _)| matches!(id, ClassId::Gmlu(c) if *c == cv))
                        .unwrap();
                    counted[idx] += 1;
                }
                for (i, (_, size)) in p.classes().iter().enumerate() {
                    assert_eq!(BigUint::from(counted[i]), *size);
                }
            }
        }
    }

    #[test]
    fn entropy_identity_small() {
        // k=1, n=2 GMLU: sizes (1,2,1): H_S = 1.5, <H_B> = 0.5
        let p = gmlu_partition(1, 2).unwrap();
        let st = entropy_stats(&p);
        assert!((st.shannon_bits - 1.5).abs() < 1e-12);
        assert!((st.expected_boltzmann_bits - 0.5).abs() < 1e-12);
        assert!((st.log_universe_bits - 2.0).abs() < 1e-12);
        assert!(st.identity_residual.abs() < 1e-9);
    }

    #[test]
    fn entropy_identity_through_caps() {
        for k in 1..=3usize {
            for n in 1..=12u32 {
                for p in [mlu_partition(k, n).unwrap(), gmlu_partition(k, n).unwrap()] {
                    let st = entropy_stats(&p);
                    assert!(
                        st.identity_residual.abs() < 1e-9,
                        "k={k} n={n}: residual {}",
                        st.identity_residual
                    );
                }
            }
        }
    }

    #[test]
    fn degenerate_partitions() {
        // single class: H_S = 0, <H_B> = log2 |M|
        let p = Partition::new(
            BigUint::from(8u32),
            vec![(ClassId::Fo("all".into()), BigUint::from(8u32))],
        )
        .unwrap();
        let st = entropy_stats(&p);
        assert_eq!(st.shannon_bits, 0.0);
        assert!((st.expected_boltzmann_bits - 3.0).abs() < 1e-12);
        // all singletons: H_S = log2 |M|, <H_B> = 0
        let q = Partition::new(
            BigUint::from(4u32),
            (0..4).map(|i| (ClassId::Fo(format!("c{i}")), BigUint::one())).collect(),
        )
        .unwrap();
        let st = entropy_stats(&q);
        assert!((st.shannon_bits - 2.0).abs() < 1e-12);
        assert_eq!(st.expected_boltzmann_bits, 0.0);
    }

    #[test]
    fn boltzmann_ratio_trend() {
        let r10 = expected_boltzmann_ratio(1, 10).unwrap();
        let r20 = expected_boltzmann_ratio(1, 20).unwrap();
        let r30 = expected_boltzmann_ratio(1, 30).unwrap();
        assert!(r10 < r20 && r20 < r30);
        assert!(r30 >= 0.85, "{r30}");
        // k n is an upper bound
        for k in 1..=2usize {
            for n in [5u32, 15, 25] {
                assert!(expected_boltzmann_ratio(k, n).unwrap() < 1.0);
            }
        }
        // frozen oracle values (binomial sums computed independently)
        assert!((r10 - 0.729357).abs() < 1e-5, "{r10}");
        assert!((r30 - 0.883320).abs() < 1e-5, "{r30}");
    }

    #[test]
    fn window_mass_threshold() {
        let delta = parse_decimal_rational("0.1").unwrap();
        // vacuous window
        let one = i_delta_mass(1, 5, &BigRational::one()).unwrap();
        assert_eq!(one, BigRational::one());
        // smallest n with mass > 0.9 is 62 for k=1, delta=0.1
        let point9 = BigRational::new(BigInt::from(9), BigInt::from(10));
        let mut threshold = None;
        for n in 1..=200u32 {
            if i_delta_mass(1, n, &delta).unwrap() > point9 {
                threshold = Some(n);
                break;
            }
        }
        assert_eq!(threshold, Some(62));
        // nondecreasing in delta at fixed n
        let d2 = parse_decimal_rational("0.2").unwrap();
        assert!(i_delta_mass(1, 40, &d2).unwrap() >= i_delta_mass(1, 40, &delta).unwrap());
    }

    #[test]
    fn f_delta_values() {
        for k in 1..=3usize {
            assert_eq!(f_delta(k, 0.0).unwrap(), k as f64);
            assert!((f_delta(k, 1e-6).unwrap() - k as f64).abs() < 1e-4);
            // strictly below k on a grid
            for i in 1..10 {
                let d = i as f64 / 10.0 * (1.0 / (1u64 << k) as f64);
                assert!(f_delta(k, d).unwrap() < k as f64);
            }
        }
        assert!(f_delta(1, 0.5).is_err());
        assert!(f_delta(1, -0.1).is_err());
    }

    #[test]
    fn missing_type_examples() {
        let (exact, _) = missing_type_probability(1, 1).unwrap();
        assert_eq!(exact, BigRational::one());
        let (exact, _) = missing_type_probability(1, 3).unwrap();
        assert_eq!(exact, BigRational::new(BigInt::from(1), BigInt::from(4)));
        // exact <= union bound
        for k in 1..=3usize {
            for n in 1..=40u32 {
                let (exact, ub) = missing_type_probability(k, n).unwrap();
                assert!(rational_to_f64(&exact) <= ub + 1e-12, "k={k} n={n}");
            }
        }
    }

    #[test]
    fn stirling_gap_values() {
        let g2 = stirling_gap(2);
        assert!((g2 - 1.8853900817779268).abs() < 1e-9, "{g2}");
        for n in 2..=100u64 {
            assert!(stirling_gap(n) > 0.0);
        }
    }

    #[test]
    fn stirling_gap_against_summed_logs() {
        // summed-logarithm oracle for log2(n!), checked on a log-spaced grid
        let mut log2_fact = 0.0;
        let mut next_check = 4u64;
        for n in 2..=1_000_000u64 {
            log2_fact += (n as f64).log2();
            if n == next_check {
                let nf = n as f64;
                let gap = log2_fact - (nf * nf.log2() - nf * std::f64::consts::E.log2());
                let ratio = gap / nf.log2();
                assert!((0.4..=2.0).contains(&ratio), "n={n} ratio={ratio}");
                assert!((stirling_gap(n) - gap).abs() < 1e-6, "n={n}");
                next_check = (next_check * 3) / 2;
            }
        }
    }

    #[test]
    fn lln_sampling() {
        let d = lln_demo(1, 10_000, 100, 12345).unwrap();
        assert!(d < 0.02, "{d}");
        assert!(d <= 0.5);
        assert_eq!(d, lln_demo(1, 10_000, 100, 12345).unwrap());
        assert_ne!(d, lln_demo(1, 10_000, 100, 54321).unwrap());
    }

    #[test]
    fn largest_class_dominates_eventually() {
        // exact finite form: the full type set beats every proper subset
        // once n is past a small threshold depending on k
        for k in 1..=2usize {
            let mut threshold = None;
            for n in 1..=30u32 {
                let p = mlu_partition(k, n).unwrap();
                let full = TypeSet::full(k);
                let full_size = p
                    .classes()
                    .iter()
                    .find(|(id, _)| matches!(id, ClassId::Mlu(t) if *t == full))
                    .map(|(_, s)| s.clone());
                let Some(full_size) = full_size else { continue };
                let dominated = p.classes().iter().all(|(id, s)| {
                    matches!(id, ClassId::Mlu(t) if *t == full) || s < &full_size
                });
                if dominated && threshold.is_none() {
                    threshold = Some(n);
                }
                if let Some(t) = threshold {
                    if n > t {
                        assert!(dominated, "k={k}: domination broke at n={n}");
                    }
                }
            }
            assert!(threshold.is_some(), "k={k}: no domination threshold up to 30");
        }
    }

    #[test]
    fn per_element_entropy_rewrite_consistency() {
        // <H_B> equals n * E[sum_i (n_i/n) log2(n/n_i)] up to a correction
        // bounded by 2 log2 n, for k=1, n <= 30
        for n in 2..=30u32 {
            let p = gmlu_partition(1, n).unwrap();
            let st = entropy_stats(&p);
            let mut per_element = 0.0;
            for (i, (id, _)) in p.classes().iter().enumerate() {
                let ClassId::Gmlu(cv) = id else { unreachable!() };
                let prob = rational_to_f64(&p.probability(i));
                let inner: f64 = cv
                    .counts()
                    .iter()
                    .filter(|&&c| c > 0)
                    .map(|&c| {
                        let freq = f64::from(c) / f64::from(n);
                        freq * (f64::from(n) / f64::from(c)).log2()
                    })
                    .sum();
                per_element += prob * inner;
            }
            let correction = (st.expected_boltzmann_bits - f64::from(n) * per_element).abs();
            assert!(
                correction <= 2.0 * f64::from(n).log2(),
                "n={n}: correction {correction}"
            );
        }
    }

    #[test]
    fn decimal_rational_parsing() {
        assert_eq!(
            parse_decimal_rational("0.1").unwrap(),
            BigRational::new(BigInt::from(1), BigInt::from(10))
        );
        assert_eq!(parse_decimal_rational("2").unwrap(), BigRational::from(BigInt::from(2)));
        assert!(parse_decimal_rational("x").is_err());
    }
}

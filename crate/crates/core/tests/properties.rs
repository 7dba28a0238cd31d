use proptest::prelude::*;
use relaylab::asymptotic::{abaf, abspdf_sym2, acutset_sym2, adf};
use relaylab::bounds::cutset_diamond;
use relaylab::energy::{ebit_lower, ebit_upper_df};
use relaylab::schemes::{rate_af, rate_baf, rate_bspdf, rate_df, BspdfParams};
use relaylab::{normalize, NetworkConfig, NormalizedNetwork};

fn gain() -> impl Strategy<Value = f64> {
    (-3.0f64..1.0).prop_map(|e| 10f64.powf(e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn df_monotone_in_gains(g in gain(), h in gain(), k in 1.0f64..4.0) {
        let base = rate_df(&NormalizedNetwork::symmetric(2, g, h).unwrap()).rate_bits;
        let more_g = rate_df(&NormalizedNetwork::symmetric(2, g * k, h).unwrap()).rate_bits;
        let more_h = rate_df(&NormalizedNetwork::symmetric(2, g, h * k).unwrap()).rate_bits;
        prop_assert!(more_g >= base && more_h >= base);
    }

    #[test]
    fn cutset_monotone_in_gains(g1 in gain(), g2 in gain(), h1 in gain(), h2 in gain(), k in 1.0f64..4.0) {
        let a = cutset_diamond(&NormalizedNetwork::new(vec![g1, g2], vec![h1, h2]).unwrap()).unwrap().bound_bits;
        let b = cutset_diamond(&NormalizedNetwork::new(vec![g1 * k, g2], vec![h1, h2 * k]).unwrap()).unwrap().bound_bits;
        prop_assert!(b >= a - 1e-12);
    }

    #[test]
    fn exact_rates_below_cutset(g1 in gain(), g2 in gain(), h1 in gain(), h2 in gain()) {
        let net = NormalizedNetwork::new(vec![g1, g2], vec![h1, h2]).unwrap();
        let bound = cutset_diamond(&net).unwrap().bound_bits;
        let af = rate_af(&net).unwrap().rate_bits;
        let baf = rate_baf(&net).unwrap().rate_bits;
        prop_assert!(af >= 0.0);
        prop_assert!(baf >= af - 1e-12);
        for r in [rate_df(&net).rate_bits, af, baf] {
            prop_assert!(r <= bound * (1.0 + 1e-9) + 1e-15, "{} > {}", r, bound);
        }
    }

    #[test]
    fn bspdf_at_any_feasible_point_below_cutset(
        g1 in gain(), g2 in gain(), h1 in gain(), h2 in gain(),
        delta in 0.01f64..1.0, u in 0.01f64..0.99, t1 in 0.0f64..0.99, t2 in 0.0f64..0.99,
    ) {
        let net = NormalizedNetwork::new(vec![g1, g2], vec![h1, h2]).unwrap();
        let sigma2 = u / delta;
        let kappa = vec![
            t1 / (delta * (net.g()[0] * sigma2 + 1.0)),
            t2 / (delta * (net.g()[1] * sigma2 + 1.0)),
        ];
        let r = rate_bspdf(&net, &BspdfParams::binary(delta, sigma2, kappa)).unwrap().rate_bits;
        let bound = cutset_diamond(&net).unwrap().bound_bits;
        prop_assert!(r <= bound * (1.0 + 1e-9) + 1e-15, "{} > {}", r, bound);
    }

    #[test]
    fn normalization_preserves_rates(g in gain(), h in gain(), ps in 0.1f64..10.0, pr in 0.1f64..10.0, n0 in 0.1f64..10.0) {
        let cfg = NetworkConfig::new(vec![g, 2.0 * g], vec![h, h], ps, vec![pr, pr], n0).unwrap();
        let scaled = NetworkConfig::unit(vec![g * ps / n0, 2.0 * g * ps / n0], vec![h * pr / n0, h * pr / n0]).unwrap();
        let a = normalize(&cfg).unwrap();
        let b = normalize(&scaled).unwrap();
        prop_assert_eq!(rate_df(&a).rate_bits, rate_df(&b).rate_bits);
        prop_assert_eq!(cutset_diamond(&a).unwrap(), cutset_diamond(&b).unwrap());
    }

    #[test]
    fn df_energy_ratio_at_least_one(g in gain(), h in gain(), n0 in 0.1f64..10.0) {
        let ratio = ebit_upper_df(g, h, n0).unwrap() / ebit_lower(g, h, n0).unwrap();
        prop_assert!(ratio >= 1.0 - 1e-12);
    }

    #[test]
    fn asymptotic_ordering(e in -2.0f64..2.0) {
        let x = 10f64.powf(e);
        let cut = acutset_sym2(x).unwrap().y;
        let bspdf = abspdf_sym2(x, 0).unwrap().y;
        prop_assert!(abaf(x, 2, 0).unwrap().y <= bspdf * (1.0 + 1e-6));
        prop_assert!(adf(x, 2).unwrap().y <= bspdf * (1.0 + 1e-6));
        prop_assert!(bspdf <= cut * (1.0 + 1e-6));
    }
}

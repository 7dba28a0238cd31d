//! Frozen values of curves that have no closed-form reference: the BSPDF
//! rate split, the ternary and timeshared curves, and the asymmetric family.
//! Recorded from a build that passed the acceptance suite.

use relaylab::asymptotic::{abaf_asym, abafdf, abspdf_asym11, abspdf_asym12, abspdf_sym2, atspdf_sym2};
use relaylab::sweep::{figure_points, Family, SweepJob};

const REL_TOL: f64 = 1e-6;

fn close(name: &str, got: f64, want: f64) {
    assert!(
        (got - want).abs() <= REL_TOL * want.abs().max(1e-3),
        "{name}: {got} vs frozen {want}"
    );
}

#[test]
fn bspdf_split() {
    for (x, r1, r2) in [
        (1.0, 0.3608783657913725, 0.39472442699620935),
        (10.0, 0.0965726009773956, 0.9584340106354127),
    ] {
        let p = abspdf_sym2(x, 7).unwrap();
        let (a, b) = p.params.split.unwrap();
        close("R1", a, r1);
        close("R2", b, r2);
    }
}

#[test]
fn ternary_beats_timeshared_binary_at_one() {
    close("tspdf(1)", atspdf_sym2(1.0, 7).unwrap().y, 0.7778420227502105);
    let mut base = SweepJob::new(Family::Sym2, &["cutset"]);
    base.x_min = 0.5;
    base.x_max = 2.0;
    base.points = 3;
    let pts = figure_points("fig5", &base).unwrap();
    let ts = pts
        .iter()
        .find(|p| p.scheme == "ts_bspdf" && (p.x - 1.0).abs() < 1e-12)
        .unwrap();
    close("ts_bspdf(1)", ts.y, 0.769143853286902);
}

#[test]
fn asymmetric_family() {
    let frozen = [
        (
            0.1,
            [
                0.32117753204793126,
                0.34231501557592364,
                0.4229414219191343,
                0.43019026537108807,
            ],
        ),
        (
            1.0,
            [
                0.5061689214177277,
                0.7556027926994179,
                0.7213114554716917,
                0.721347520444878,
            ],
        ),
    ];
    for (x, [baf, b11, bafdf, b12]) in frozen {
        close("baf", abaf_asym(x, 7).unwrap().y, baf);
        close("bspdf11", abspdf_asym11(x, 7).unwrap().y, b11);
        close("bafdf", abafdf(x, 7).unwrap().y, bafdf);
        close("bspdf12", abspdf_asym12(x, 7).unwrap().y, b12);
    }
}

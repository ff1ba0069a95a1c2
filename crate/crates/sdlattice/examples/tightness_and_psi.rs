//! Tightness and uniform-integrability diagnostics: tail envelopes, the
//! dyadic-threshold ψ, the strictly increasing variant and the De La Vallée
//! Poussin ψ_α with its certificates.
//!
//! Run with `cargo run -p sdlattice --example tightness_and_psi`.

use sdlattice::integrability::{
    build_psi_dlvp, build_psi_strict, build_psi_tight, check_convex_criterion, MeasureFamily,
    NonnegMeasure, PsiFunction, TailOracle,
};

fn main() {
    // an abstract family known only through its tail envelope T(s) = e^{-s}
    // and moment tail U(s) = (s+1)e^{-s}
    let oracle = MeasureFamily::Oracle(TailOracle::with_moment(
        |s| (-s).exp(),
        |s| (s + 1.0) * (-s).exp(),
    ));
    println!("tail_sup(ln 2) = {}", oracle.tail_sup(2.0_f64.ln()).unwrap());
    println!("ui_tail(0)     = {}", oracle.ui_tail(0.0).unwrap());

    let tight = build_psi_tight(&oracle, 5, true).unwrap();
    println!("dyadic thresholds: {:?}", tight.thresholds);
    println!("tightness certificate (<= 1): {:.6}", tight.certificate);
    if let PsiFunction::Continuous(psi) = &tight.psi {
        for s in [0.0, 1.0, 2.0, 3.0] {
            println!("  psi({s}) = {:.4}", psi.value(s));
        }
    }

    // an explicit family of finite measures on the half line
    let family = MeasureFamily::explicit(vec![
        NonnegMeasure::from_pairs([(0.0, 0.55), (1.0, 0.4), (6.0, 0.05)]).unwrap(),
        NonnegMeasure::from_pairs([(0.5, 0.9), (3.0, 0.1)]).unwrap(),
    ])
    .unwrap();

    let strict = build_psi_strict(&family, 1.0, 5).unwrap();
    println!(
        "strict psi slopes on [0, 1]: {:?}",
        strict.psi.segment_slopes()
    );
    println!("strict certificate: {:.6}", strict.certificate);

    let dlvp = build_psi_dlvp(&family, 0.5).unwrap();
    println!(
        "dlvp psi convex: {}, eta certificate {:.6}, integral bound {:.6}",
        dlvp.psi.is_convex(1e-12),
        dlvp.eta_moment_bound,
        dlvp.psi_integral_bound
    );
    for s in [2.0, 4.0, 6.0] {
        println!("  uniform-integrability bound at {s}: {:.6}", dlvp.ui_bound(s));
    }

    let criterion = check_convex_criterion(&family, 1.0);
    println!(
        "convex criterion at M = 1: holds = {}, bound = {}",
        criterion.holds, criterion.bound
    );
}

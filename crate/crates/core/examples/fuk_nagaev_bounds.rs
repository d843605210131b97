//! Tail bounds: the Fuk-Nagaev inequality, the rate radius ε_n, the three
//! tail terms and the smallest n reaching a target confidence level.

use stochastic_mann::bounds::{find_n_sigma, rate_epsilon, tail_terms, BoundConstants, FukNagaev, MixingParams};

fn main() -> stochastic_mann::Result<()> {
    let fnk = FukNagaev { r: 4.0, n: 100.0, s_n_sq: 2.0, c_fn: 1.0, beta: 3.0, p: 10.0 };
    println!("Fuk-Nagaev, r=4 n=100 s_n^2=2 beta=3 p=10");
    for lambda in [10.0, 30.0, 100.0, 300.0] {
        let (gauss, poly) = fnk.terms(lambda)?;
        println!("  lambda {lambda:>5}: {gauss:.4e} + {poly:.4e} = {:.4e}", fnk.bound(lambda)?);
    }

    // Kepler settings: a = 0.9, c = e, so a(1 - c) ≈ 0.715.
    let (a, c) = (0.9, 0.20563069);
    let params = MixingParams { p: 10.0, beta: 3.0, d: 1.0, rho: 0.7 };
    let consts = BoundConstants::for_decay(4.0, 0.1, a * (1.0 - c))?;
    println!("\nq = {:.4}, window lower end {:.4}", params.q(), params.window_lower());
    for n in [10u64, 1_000, 100_000, 10_000_000] {
        let t = tail_terms(n, &params, &consts)?;
        println!(
            "  n {n:>9}: eps {:.4e}  T1 {:.3e}  T2 {:.3e}  T3 {:.3e}",
            rate_epsilon(n, a, c, params.rho, consts.delta)?,
            t.t1,
            t.t2,
            t.t3
        );
    }
    for sigma in [0.5, 0.1, 0.01] {
        println!("  n_sigma({sigma}) = {}", find_n_sigma(sigma, &params, &consts, 1 << 50)?);
    }
    Ok(())
}

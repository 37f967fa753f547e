use shuntq_core::search::{self, ParamRange, SearchSpace};
use shuntq_core::presets;

fn main() {
    // Centered 5x5x5 box, asymmetry balanced post-hoc (canonical flow).
    let t1 = presets::single_junction();
    let mut space = SearchSpace::pinned(&t1);
    space.e_jq = ParamRange { min: 9.5, max: 10.5, n: 5 };
    space.e_jsigma = ParamRange { min: 19.0, max: 21.0, n: 5 };
    space.l = ParamRange { min: 4.275, max: 4.725, n: 5 };
    space.d = None;
    let a = search::search(&space, None).unwrap();
    println!("balanced box: objective {:.6} best d {:.6} gxx {:.4} gzx {:.4} feasible {}",
        a.objective, a.best.d, a.features.g_xx_max, a.features.g_zx_max, a.feasible);

    // Degenerate single-point space at the adapted design.
    let t3 = presets::adapted_array();
    let echo = search::search(&SearchSpace::pinned(&t3), None).unwrap();
    println!("t3 echo: objective {:.6} c {:.4} evaluated {} gzx {:.4} gxx {:.4}",
        echo.objective, echo.best.c, echo.evaluated, echo.features.g_zx_max, echo.features.g_xx_max);

    // Monotone pair.
    let mut small = SearchSpace::pinned(&t1);
    small.l = ParamRange { min: 4.3, max: 4.5, n: 3 };
    let mut large = SearchSpace::pinned(&t1);
    large.l = ParamRange { min: 4.1, max: 4.5, n: 5 };
    let s = search::search(&small, None).unwrap();
    let l = search::search(&large, None).unwrap();
    println!("monotone: small {:.6} large {:.6} ok {}", s.objective, l.objective, l.objective >= s.objective);

    // Infeasible slab.
    let mut slab = SearchSpace::pinned(&t1);
    slab.l = ParamRange { min: 6.0, max: 6.5, n: 3 };
    match search::search(&slab, None) {
        Err(e) => println!("slab error: {e}"),
        Ok(_) => println!("slab unexpectedly feasible"),
    }
}

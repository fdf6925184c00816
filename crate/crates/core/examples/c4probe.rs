use gradua_core::gmod::SubquotientModule;
use gradua_core::gring::GradedRing;
use gradua_core::scalars::Field;
use gradua_core::sweep::{v_function, FamilyFunctor, FamilyVariant, VFamily};
use std::time::Instant;

fn main() {
    // probe: a 3-variable Ext sweep like criterion 4 generates
    let ring = GradedRing::build(&[("x", 1), ("y", 1), ("z", 1)], Field::Rationals, &[]).unwrap();
    let l = SubquotientModule::cyclic(&ring, &ring.ideal_str(&["x*y", "z^2"]).unwrap()).unwrap();
    let m = SubquotientModule::free(&ring, vec![0]);
    let n_sub = m.submodule(m.u_gens().to_vec()).unwrap();
    let ideal = ring.ideal_str(&["x^2", "y*z"]).unwrap();
    let family = VFamily {
        functor: FamilyFunctor::Ext { l, k: 2 },
        variant: FamilyVariant::Quotient { m, n_sub },
        ideal,
    };
    for n_max in [3u32, 5, 8] {
        let t = Instant::now();
        let rep = v_function(&family, 1, n_max, 2, &[], false).unwrap();
        println!("n_max={n_max}: {:?}  rows: {:?}", t.elapsed(), rep.rows.iter().map(|r| r.v).collect::<Vec<_>>());
    }
}

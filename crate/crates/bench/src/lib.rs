//! Inputs shared by the benchmarks.

use coxtop_core::chamber::{product_building, projective_plane_building, thin_building};
use coxtop_core::{ChamberSystem, CoxeterMatrix};

pub fn matrix(text: &str) -> CoxeterMatrix {
    CoxeterMatrix::parse(text).expect("fixture parses")
}

pub fn h3() -> CoxeterMatrix {
    matrix("gens a b c\na b 5\nb c 3")
}

pub fn triangle() -> CoxeterMatrix {
    matrix("gens a b c\na b 3\nb c 3\na c 3")
}

pub fn free_product() -> CoxeterMatrix {
    matrix("gens s t u\ns t inf\nt u inf\ns u inf")
}

pub fn thin_h3() -> ChamberSystem {
    let m = h3();
    thin_building(&m, m.all()).expect("finite type")
}

pub fn fano() -> ChamberSystem {
    projective_plane_building(2).expect("q = 2")
}

pub fn plane3() -> ChamberSystem {
    projective_plane_building(3).expect("q = 3")
}

pub fn fano_times_a1() -> ChamberSystem {
    let m = matrix("gens u");
    product_building(&fano(), &thin_building(&m, m.all()).expect("A1")).expect("disjoint labels")
}

#![allow(dead_code)]

use coble_core::classify::{Component, MarkedPoint, MinimalSurface, RationalTypeInput, Role};

fn c(label: &str, role: Role, coef: i64, class: &str) -> Component {
    Component::new(label, role, coef, class)
}

fn input(y: MinimalSurface, k: i64, m: i64, comps: Vec<Component>, p1: Option<&[&str]>) -> RationalTypeInput {
    RationalTypeInput {
        y_min: y,
        k,
        m,
        components: comps,
        p1: p1.map(|t| MarkedPoint { through: t.iter().map(|s| s.to_string()).collect() }),
    }
}

/// One canonical instance per case, built from the data the case prescribes.
pub fn golden(case: u8) -> RationalTypeInput {
    use MinimalSurface::*;
    use Role::*;
    match case {
        1 => input(P2, 1, 0, vec![c("M1", M1, 1, "e0"), c("G1", G, 2, "2e0"), c("H1", H, 1, "e0")], Some(&["M1", "H1"])),
        2 => input(
            P2,
            2,
            0,
            vec![c("M1", M1, 2, "e0"), c("G1", G, 2, "e0"), c("H1", H, 1, "e0"), c("H2", H, 1, "e0")],
            Some(&["M1", "H1", "H2"]),
        ),
        3 => input(P2, 1, 0, vec![c("M1", M1, 1, "e0"), c("G1", G, 2, "2e0"), c("H1", H, 1, "e0")], Some(&["M1", "G1", "H1"])),
        4 => input(
            P2,
            3,
            0,
            vec![c("M1", M1, 3, "e0"), c("H1", H, 2, "e0"), c("H2", H, 1, "e0")],
            Some(&["M1", "H1", "H2"]),
        ),
        5 => input(P2, 1, 1, vec![c("M1", M1, 1, "e0"), c("G1", G, 2, "2e0"), c("G2", G, 1, "e0")], None),
        6 => input(P2, 1, 1, vec![c("M1", M1, 1, "e0"), c("G1", G, 3, "e0"), c("G2", G, 2, "e0")], None),
        7 => input(P2, 1, 3, vec![c("M1", M1, 1, "2e0"), c("G1", G, 3, "e0"), c("G2", G, 1, "e0")], Some(&["M1", "G2"])),
        8 => input(P2, 1, 3, vec![c("M1", M1, 1, "2e0"), c("G1", G, 2, "e0"), c("G2", G, 2, "e0")], Some(&["M1", "G2"])),
        9 => input(P2, 1, 4, vec![c("M1", M1, 1, "2e0"), c("G1", G, 4, "e0")], None),
        10 => input(
            P1xP1,
            1,
            2,
            vec![c("M1", M1, 1, "f + s0"), c("G1", G, 1, "f + s0"), c("G2", G, 2, "f"), c("G3", G, 2, "s0")],
            None,
        ),
        11 => input(
            P1xP1,
            1,
            2,
            vec![c("M1", M1, 1, "f + s0"), c("G1", G, 2, "f"), c("G2", G, 1, "f"), c("G3", G, 3, "s0")],
            None,
        ),
        12 => input(
            Fb(2),
            1,
            2,
            vec![c("M1", M1, 1, "2f + s0"), c("G1", G, 2, "2f + s0"), c("H1", H, 1, "s0"), c("G2", G, 2, "f")],
            None,
        ),
        13 => input(
            Fb(3),
            2,
            0,
            vec![c("M1", M1, 2, "f"), c("G1", G, 4, "s0"), c("H1", H, 5, "f"), c("H2", H, 3, "f")],
            None,
        ),
        14 => input(Fb(1), 1, 3, vec![c("M1", M1, 1, "2f + s0"), c("G1", G, 3, "s0"), c("G2", G, 4, "f")], None),
        15 => input(Fb(1), 1, 5, vec![c("M1", M1, 1, "3f + s0"), c("G1", G, 3, "s0"), c("G2", G, 3, "f")], None),
        16 => input(
            Fb(3),
            1,
            3,
            vec![c("M1", M1, 1, "3f + s0"), c("H1", H, 3, "s0"), c("G1", G, 4, "f"), c("G2", G, 3, "f")],
            None,
        ),
        _ => panic!("no case {case}"),
    }
}

fn set(inp: &mut RationalTypeInput, label: &str, coef: Option<i64>, class: Option<&str>) {
    let comp = inp.components.iter_mut().find(|c| c.label == label).expect("label present");
    if let Some(g) = coef {
        comp.coef = g;
    }
    if let Some(cl) = class {
        comp.class = coble_core::blowup::ClassSpec::Expr(cl.into());
    }
}

/// The golden instance with one field broken, and the constraint that must fail for its case.
pub fn perturbed(case: u8) -> (RationalTypeInput, &'static str) {
    let mut inp = golden(case);
    let name = match case {
        1 => {
            set(&mut inp, "H1", Some(2), None);
            "anticanonical class"
        }
        2 => {
            inp.p1.as_mut().unwrap().through.push("G1".into());
            "p1 incidence (G1)"
        }
        3 => {
            inp.p1.as_mut().unwrap().through.retain(|l| l != "H1");
            "p1 incidence (H1)"
        }
        4 => {
            inp.m = 1;
            "(m, k)"
        }
        5 => {
            inp.p1 = Some(MarkedPoint { through: vec!["M1".into()] });
            "marked point"
        }
        6 => {
            inp.k = 2;
            set(&mut inp, "M1", Some(2), None);
            set(&mut inp, "G1", Some(2), None);
            "sum of G coefficients"
        }
        7 => {
            inp.p1.as_mut().unwrap().through.retain(|l| l != "G2");
            "number of G components not through p1"
        }
        8 => {
            inp.p1.as_mut().unwrap().through.push("G1".into());
            "number of G components not through p1"
        }
        9 => {
            inp.m = 3;
            "M1 self-intersection"
        }
        10 => {
            set(&mut inp, "G1", Some(3), None);
            inp.components.retain(|c| c.label != "G2" && c.label != "G3");
            "coefficient of G1"
        }
        11 => {
            set(&mut inp, "G2", Some(2), None);
            "sum of f-fibre coefficients"
        }
        12 => {
            set(&mut inp, "H1", Some(2), None);
            "coefficient of G1"
        }
        13 => {
            set(&mut inp, "H1", Some(4), None);
            "sum of H coefficients"
        }
        14 => {
            set(&mut inp, "G2", Some(3), None);
            "scroll f-balance: sum g_i a_i + a = 2n + 4"
        }
        15 => {
            set(&mut inp, "G1", Some(2), None);
            set(&mut inp, "G2", Some(4), None);
            "scroll s0-balance: sum g_i b_i + h = 3"
        }
        16 => {
            set(&mut inp, "H1", Some(2), None);
            "coefficient of H1"
        }
        _ => panic!("no case {case}"),
    };
    (inp, name)
}

pub const SCROLL_CASES: [u8; 6] = [10, 11, 12, 14, 15, 16];

pub const SCROLL_CONSTRAINTS: [&str; 3] = [
    "scroll f-balance: sum g_i a_i + a = 2n + 4",
    "scroll s0-balance: sum g_i b_i + h = 3",
    "scroll product: (a - n)(3 - sum g_i b_i) = 0",
];

//! Satake diagrams of the classical families, generated from their
//! parameters (Bourbaki numbering).

use super::SatakeDiagram;
use crate::rootsys::{CartanType, Family};

/// Largest rank produced by [`classical_stanzas`].
pub const CLASSICAL_MAX_RANK: usize = 4;

fn ty(family: Family, rank: usize) -> CartanType {
    CartanType::new(family, rank).expect("generator only emits valid types")
}

/// AI, AII, AIII, BI, CI, CII, DI and DIII up to rank 4.
pub fn classical_stanzas() -> Vec<SatakeDiagram> {
    let max = CLASSICAL_MAX_RANK;
    let mut out = Vec::new();

    // AI: sl(n,R), split.
    for n in 2..=max + 1 {
        out.push(SatakeDiagram::new(format!("sl({n},R)"), ty(Family::A, n - 1), [], []));
    }
    // AII: su*(2n), odd nodes black.
    for n in 2.. {
        let r = 2 * n - 1;
        if r > max {
            break;
        }
        out.push(SatakeDiagram::new(
            format!("su*({})", 2 * n),
            ty(Family::A, r),
            (0..r).step_by(2),
            [],
        ));
    }
    // AIII: su(p,q), p >= q >= 1. Arrows i <-> n-i for i <= q, middle black.
    for n in 2..=max + 1 {
        let r = n - 1;
        for q in 1..=n / 2 {
            let p = n - q;
            let arrows = (1..=q).filter(|&i| i < n - i).map(|i| (i - 1, n - i - 1));
            let black = q..(n - q - 1);
            out.push(SatakeDiagram::new(format!("su({p},{q})"), ty(Family::A, r), black, arrows));
        }
    }
    // BI: so(p,q), p+q = 2r+1, real rank q, nodes q+1..r black.
    for r in 2..=max {
        for q in 1..=r {
            let p = 2 * r + 1 - q;
            out.push(SatakeDiagram::new(format!("so({p},{q})"), ty(Family::B, r), q..r, []));
        }
    }
    // CI: sp(r,R), split.
    for r in 2..=max {
        out.push(SatakeDiagram::new(format!("sp({r},R)"), ty(Family::C, r), [], []));
    }
    // CII: sp(p,q), p >= q >= 1; white nodes 2,4,..,2q.
    for r in 2..=max {
        for q in 1..=r / 2 {
            let p = r - q;
            let black = (0..r).filter(|&i| !(i % 2 == 1 && i < 2 * q));
            out.push(SatakeDiagram::new(format!("sp({p},{q})"), ty(Family::C, r), black, []));
        }
    }
    // DI: so(p,q), p+q = 2r. q <= r-2: nodes q+1..r black; q = r-1: arrow on the fork.
    for r in 4..=max {
        for q in 1..=r {
            let p = 2 * r - q;
            let label = format!("so({p},{q})");
            let sd = if q + 2 <= r {
                SatakeDiagram::new(label, ty(Family::D, r), q..r, [])
            } else if q + 1 == r {
                SatakeDiagram::new(label, ty(Family::D, r), [], [(r - 2, r - 1)])
            } else {
                SatakeDiagram::new(label, ty(Family::D, r), [], [])
            };
            out.push(sd);
        }
    }
    // DIII: so*(2r), r even: odd nodes black, fork end white.
    for r in 4..=max {
        let sd = if r % 2 == 0 {
            SatakeDiagram::new(
                format!("so*({})", 2 * r),
                ty(Family::D, r),
                (0..r - 1).step_by(2),
                [],
            )
        } else {
            SatakeDiagram::new(
                format!("so*({})", 2 * r),
                ty(Family::D, r),
                (0..r - 2).step_by(2),
                [(r - 2, r - 1)],
            )
        };
        out.push(sd);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::satake::validate;

    #[test]
    fn every_generated_diagram_validates() {
        for sd in classical_stanzas() {
            let rep = validate(&sd);
            assert!(rep.passed(), "{sd}: {:?}", rep.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn expected_shapes() {
        let all = classical_stanzas();
        let find = |l: &str| all.iter().find(|d| d.label == l).unwrap().to_stanza();
        assert_eq!(find("su(2,1)"), "name=su(2,1); type=A2; black={}; arrows={(1,2)}");
        assert_eq!(find("su(3,1)"), "name=su(3,1); type=A3; black={2}; arrows={(1,3)}");
        assert_eq!(find("su(1,1)"), "name=su(1,1); type=A1; black={}; arrows={}");
        assert_eq!(find("su(2,2)"), "name=su(2,2); type=A3; black={}; arrows={(1,3)}");
        assert_eq!(find("su*(4)"), "name=su*(4); type=A3; black={1,3}; arrows={}");
        assert_eq!(find("so(4,1)"), "name=so(4,1); type=B2; black={2}; arrows={}");
        assert_eq!(find("sp(2,1)"), "name=sp(2,1); type=C3; black={1,3}; arrows={}");
        assert_eq!(find("so(5,3)"), "name=so(5,3); type=D4; black={}; arrows={(3,4)}");
        assert_eq!(find("so*(8)"), "name=so*(8); type=D4; black={1,3}; arrows={}");
    }

    #[test]
    fn labels_are_unique() {
        let all = classical_stanzas();
        let mut labels: Vec<_> = all.iter().map(|d| d.label.clone()).collect();
        labels.sort();
        labels.dedup();
        assert_eq!(labels.len(), all.len());
    }
}

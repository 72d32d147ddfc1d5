//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

mod common;

use std::process::ExitCode;

use chi_lie::catalog;
use chi_lie::chi_construct::{
    compute_chi, compute_chi_abelian, compute_chi_superperfect, default_max_class,
    image_rho_formula, image_rho_subspace, r_seeds, ChiAlgebra,
};
use chi_lie::exact_linalg::{format_vector, is_zero_vec, Matrix};
use chi_lie::free_lie::{lyndon_basis, witt_dim};
use chi_lie::homology::{h2_ce, h2_hopf, schur_via_exterior};
use chi_lie::nilpotent_quotient::{stable_quotient, Presentation};
use chi_lie::verify::Status;
use chi_lie::LieAlgebra;
use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn via_quotient(g: &LieAlgebra) -> Result<ChiAlgebra, String> {
    compute_chi(g, default_max_class(g).unwrap()).map_err(|e| format!("{}: {e}", g.name()))
}

fn criterion_1() -> Outcome {
    for n in 1..=5 {
        let g = LieAlgebra::abelian(n);
        let c2 = n * (n - 1) / 2;
        for (route, c) in [
            (
                "closed form",
                compute_chi_abelian(&g).map_err(|e| e.to_string())?,
            ),
            ("quotient", via_quotient(&g)?),
        ] {
            let dims = (c.dim(), c.w.dim(), c.d.dim(), c.r.dim());
            ensure!(
                dims == (2 * n + c2, c2, c2, 0),
                "abelian({n}) {route}: (chi, W, D, R) = {dims:?}"
            );
            let img = image_rho_subspace(&c);
            ensure!(
                img.dim() == 2 * n && img == image_rho_formula(&g),
                "abelian({n}) {route}: Im rho has dim {}",
                img.dim()
            );
        }
    }
    Ok("n = 1..5, closed form and quotient route agree".into())
}

fn criterion_2() -> Outcome {
    let g = catalog::paper_example_1().map_err(|e| e.to_string())?;
    let c = via_quotient(&g)?;
    let h2 = [
        h2_ce(&g).dim,
        h2_hopf(&g).map_err(|e| e.to_string())?,
        schur_via_exterior(&g).map_err(|e| e.to_string())?,
    ];
    let got = (
        c.dim(),
        c.r.dim(),
        h2,
        image_rho_subspace(&c).dim(),
        c.w.dim(),
    );
    ensure!(
        got == (14, 1, [4, 4, 4], 9, 5),
        "(chi, R, H2, Im rho, W) = {got:?}"
    );
    Ok(format!("{got:?}"))
}

fn criterion_3() -> Outcome {
    let g = catalog::build("free_nilpotent", &[3, 2]).map_err(|e| e.to_string())?;
    let c = via_quotient(&g)?;
    let h2 = [
        h2_ce(&g).dim,
        h2_hopf(&g).map_err(|e| e.to_string())?,
        schur_via_exterior(&g).map_err(|e| e.to_string())?,
    ];
    let got = (
        c.dim(),
        c.r.dim(),
        h2,
        image_rho_subspace(&c).dim(),
        c.w.dim(),
    );
    ensure!(
        got == (27, 4, [8, 8, 8], 15, 12),
        "(chi, R, H2, Im rho, W) = {got:?}"
    );
    Ok(format!("{got:?}"))
}

fn criterion_4() -> Outcome {
    let g = catalog::build("free_nilpotent", &[3, 2]).map_err(|e| e.to_string())?;
    let c = via_quotient(&g)?;
    ensure!(!c.r.is_zero(), "R is zero");
    let seed = r_seeds(&c.chi, &c.gen_images, &c.l)
        .into_iter()
        .find(|v| !is_zero_vec(v))
        .ok_or("no nonzero triple bracket")?;
    ensure!(c.r.contains(&seed), "witness not in R");
    let labels = c.chi.labels();
    let terms: Vec<String> = format_vector(&seed)
        .into_iter()
        .enumerate()
        .filter(|(_, x)| x != "0")
        .map(|(k, x)| format!("({x}) {}", labels[k]))
        .collect();
    Ok(format!(
        "dim R = {}, nonzero [x, [l, y^psi]] = {}",
        c.r.dim(),
        terms.join(" + ")
    ))
}

fn criterion_5() -> Outcome {
    let g = catalog::build("heisenberg", &[3]).map_err(|e| e.to_string())?;
    let h2 = h2_ce(&g).dim;
    ensure!(h2 == 2, "CE oracle gives H2(h3) = {h2}");
    let c = via_quotient(&g)?;
    let img = image_rho_subspace(&c).dim();
    ensure!(c.r.is_zero(), "dim R = {}", c.r.dim());
    ensure!(
        c.dim() == img + h2 && (img, c.dim()) == (7, 9),
        "dim chi = {}, Im rho = {img}",
        c.dim()
    );
    Ok(format!("dim R = 0, {} = {img} + {h2}", c.dim()))
}

fn criterion_6() -> Outcome {
    let g = catalog::sl2().map_err(|e| e.to_string())?;
    ensure!(h2_ce(&g).dim == 0, "H2(sl2) = {}", h2_ce(&g).dim);
    let c = compute_chi_superperfect(&g).map_err(|e| e.to_string())?;
    ensure!(
        (c.dim(), c.w.dim(), c.r.dim()) == (9, 0, 0),
        "(chi, W, R) = {:?}",
        (c.dim(), c.w.dim(), c.r.dim())
    );
    ensure!(
        c.rho.matrix.rank() == 9 && c.rho.is_hom(),
        "rho is not an isomorphism"
    );
    ensure!(
        c.rho.matrix == Matrix::identity(9),
        "rho differs from the identity"
    );
    Ok("dim 9, W = R = 0, rho = id".into())
}

fn criterion_7() -> Outcome {
    let mut seen = Vec::new();
    for e in catalog::standard_entries() {
        let g = e.build().map_err(|e| e.to_string())?;
        let c = chi_of(&g);
        let h2 = h2_ce(&g).dim;
        ensure!(
            c.w.dim() - c.r.dim() == h2,
            "{}: {} - {} != {h2}",
            e.label(),
            c.w.dim(),
            c.r.dim()
        );
        for (q, v) in [
            ("dim_chi", c.dim()),
            ("dim_w", c.w.dim()),
            ("dim_r", c.r.dim()),
            ("dim_h2", h2),
        ] {
            if let Some(exp) = e.expected(q) {
                ensure!(exp == v, "{}: {q} = {v}, expected {exp}", e.label());
            }
        }
        seen.push(e.label());
    }
    Ok(format!("{} entries", seen.len()))
}

fn criterion_8() -> Outcome {
    for e in catalog::standard_entries() {
        let g = e.build().map_err(|e| e.to_string())?;
        let r = verify(&chi_of(&g));
        ensure!(r.all_passed, "{}: failed {:?}", e.label(), r.failed());
        for id in ["C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C12"] {
            ensure!(
                r.status(id) == Some(Status::Pass),
                "{}: {id} not run",
                e.label()
            );
        }
    }
    let h3 = catalog::build("heisenberg", &[3]).map_err(|e| e.to_string())?;
    let c = chi_of(&h3);
    let faults = [
        ("structure constant", verify(&corrupt_chi_constant(&c))),
        (
            "relator",
            verify(&chi_with_flipped_relator(&LieAlgebra::abelian(3), 4)),
        ),
        ("rho entry", verify(&corrupt_rho_entry(&c))),
    ];
    let mut flipped = Vec::new();
    for (what, r) in &faults {
        ensure!(!r.all_passed, "{what} fault not detected");
        ensure!(
            r.checks
                .iter()
                .filter(|c| c.status == Status::Fail)
                .all(|c| c.witness.is_some()),
            "{what}: failure without witness"
        );
        flipped.push(format!("{what} -> {:?}", r.failed()));
    }
    Ok(format!("all entries pass; {}", flipped.join(", ")))
}

fn brute_lyndon_count(m: usize, d: usize) -> usize {
    let mut count = 0;
    let mut word = vec![0usize; d];
    loop {
        let strictly_least = (1..d).all(|s| {
            let rotated: Vec<usize> = word[s..].iter().chain(&word[..s]).copied().collect();
            word < rotated
        });
        if strictly_least {
            count += 1;
        }
        let mut pos = d;
        loop {
            if pos == 0 {
                return count;
            }
            pos -= 1;
            word[pos] += 1;
            if word[pos] < m {
                break;
            }
            word[pos] = 0;
        }
    }
}

fn criterion_9() -> Outcome {
    for e in nilpotent_entries() {
        let g = e.build().map_err(|e| e.to_string())?;
        let three = (
            h2_ce(&g).dim,
            h2_hopf(&g).map_err(|e| e.to_string())?,
            schur_via_exterior(&g).map_err(|e| e.to_string())?,
        );
        ensure!(
            three.0 == three.1 && three.1 == three.2,
            "{}: {three:?}",
            e.label()
        );
    }
    for m in 1..=4 {
        for c in 1..=5 {
            let basis = lyndon_basis(m, c);
            for d in 1..=c {
                let count = basis.iter().filter(|b| b.degree() == d).count();
                let (witt, brute) = (witt_dim(m, d), brute_lyndon_count(m, d));
                ensure!(
                    count == witt && witt == brute,
                    "m={m} d={d}: basis {count}, Witt {witt}, brute {brute}"
                );
            }
        }
    }
    Ok("H2 agrees on nilpotent entries; Lyndon counts m <= 4, c <= 5".into())
}

fn criterion_10() -> Outcome {
    let witt_partial: Vec<usize> = (1..=8)
        .scan(0, |acc, d| {
            *acc += witt_dim(2, d);
            Some(*acc)
        })
        .collect();
    ensure!(
        witt_partial == [2, 3, 5, 8, 14, 23, 41, 71],
        "Witt partial sums {witt_partial:?}"
    );
    let free = Presentation::free(2);
    for max_class in 2..=8 {
        let q = stable_quotient(&free, max_class).map_err(|e| e.to_string())?;
        ensure!(!q.stabilized, "stabilized at max_class {max_class}");
        ensure!(
            q.history == witt_partial[..max_class],
            "max_class {max_class}: history {:?}",
            q.history
        );
        ensure!(
            q.history.windows(2).all(|w| w[0] < w[1]),
            "history not increasing"
        );
    }
    Ok(format!("history {witt_partial:?}, never stabilized"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("abelian formula", criterion_1),
        ("three equal commutators", criterion_2),
        ("free nilpotent rank 3 class 2", criterion_3),
        ("R nonzero witness in rank 3", criterion_4),
        ("two-generated Heisenberg", criterion_5),
        ("superperfect sl2", criterion_6),
        ("dim W - dim R = dim H2", criterion_7),
        ("structural checks and fault injection", criterion_8),
        ("oracle equivalence", criterion_9),
        ("free rank 2 negative control", criterion_10),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any criterion fails.

use std::path::Path;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pbt_core::analysis::ad_study::{
    ad_known_points, choi_resource_pair, d1_formula, difference_spectrum, kink_location, p0_cross,
};
use pbt_core::analysis::alternate::{alternate_derivatives, alternate_known_point, alternate_xyz};
use pbt_core::analysis::distance::{diamond_bounds, diamond_numeric, trace_norm, DiamondOptions};
use pbt_core::analysis::models::{ad_choi, depolarising_choi, pbt_ad_closed_form, xi, AdConvention};
use pbt_core::cli::run_args;
use pbt_core::kraus::{choi_to_kraus, protocol_kraus, real_trace};
use pbt_core::linalg::{self, hermitian_eigenvalues, ComplexMatrix};
use pbt_core::oracle::{build_povm, oracle_choi_with};
use pbt_core::pbt_choi::{pbt_choi, ChoiMatrix};
use pbt_core::resource::{make_family, random_symmetric_resource, ReducedResource, ResourceFamily};

type Check<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn family_cases(n: usize) -> Vec<(String, ReducedResource)> {
    let mut out = vec![("bell".to_string(), make_family(&ResourceFamily::Bell, n).unwrap())];
    for p in [0.0, 0.3, 0.7, 1.0] {
        out.push((format!("ad_choi({p})"), make_family(&ResourceFamily::AdChoi(p), n).unwrap()));
    }
    for a in [0.1, 0.5, 0.9] {
        out.push((format!("alternate({a})"), make_family(&ResourceFamily::Alternate(a), n).unwrap()));
    }
    out
}

fn random_cases(n: usize, count: usize, seed: u64) -> Vec<(String, ReducedResource)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|k| (format!("random#{k}"), random_symmetric_resource(n, &mut rng).unwrap())).collect()
}

fn ac1() -> Verdict {
    let start = Instant::now();
    let two = (xi(2).unwrap() - (6.0 - 3f64.sqrt()) / 6.0).abs();
    let mut worst = two;
    let mut detail = format!("|ξ2 − (6−√3)/6| = {two:.1e}");
    for n in [3, 4] {
        // ξ from the dense oracle: the |01> diagonal entry of C_dep is ξ/4
        let povm = build_povm(n).unwrap();
        let dense =
            4.0 * oracle_choi_with(&povm, &make_family(&ResourceFamily::Bell, n).unwrap()).unwrap().get(1, 1).re;
        let d = (xi(n).unwrap() - dense).abs();
        worst = worst.max(d);
        detail += &format!(", |ξ{n} − oracle| = {d:.1e}");
    }
    let half = (xi(3).unwrap() - 0.5).abs();
    let four = (xi(4).unwrap() - 0.3562148).abs();
    let elapsed = start.elapsed();
    verdict(
        worst <= 1e-12 && half <= 1e-12 && four < 5e-8 && elapsed < Duration::from_secs(1),
        format!("{detail}, ξ4 = {:.9}, {elapsed:.2?}", xi(4).unwrap()),
    )
}

fn ac2() -> Verdict {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for n in 2..=5 {
        let povm = build_povm(n).unwrap();
        let mut all = family_cases(n);
        if n <= 4 {
            all.extend(random_cases(n, 20, 0xac2 + n as u64));
        }
        for (_, res) in &all {
            let d = pbt_choi(res).unwrap().max_abs_diff(&oracle_choi_with(&povm, res).unwrap());
            worst = worst.max(d);
            cases += 1;
        }
    }
    let elapsed = start.elapsed();
    verdict(
        worst <= 1e-10 && elapsed < Duration::from_secs(120),
        format!("{cases} resources, max deviation {worst:.1e}, {elapsed:.2?}"),
    )
}

fn ac3() -> Verdict {
    let mut worst: f64 = 0.0;
    for n in 2..=8 {
        let c = pbt_choi(&make_family(&ResourceFamily::Bell, n).unwrap()).unwrap();
        worst = worst.max(c.max_abs_diff(&depolarising_choi(xi(n).unwrap()).unwrap()));
    }
    verdict(worst <= 1e-10, format!("N = 2..8, max deviation {worst:.1e}"))
}

fn ac4() -> Verdict {
    let mut worst: f64 = 0.0;
    for n in 2..=8 {
        for k in 0..=20 {
            let p1 = k as f64 * 0.05;
            let c = pbt_choi(&make_family(&ResourceFamily::AdChoi(p1), n).unwrap()).unwrap();
            worst = worst.max(c.max_abs_diff(&pbt_ad_closed_form(n, p1).unwrap()));
        }
    }
    verdict(worst <= 1e-10, format!("N = 2..8, p1 step 0.05, max deviation {worst:.1e}"))
}

fn ac5(opts: &DiamondOptions) -> Verdict {
    let mut gap: f64 = 0.0;
    let mut numeric_dev: f64 = 0.0;
    let mut formula_dev: f64 = 0.0;
    let mut points = 0;
    for n in [3, 4, 6] {
        let x = xi(n).unwrap();
        for p0 in [0.1, 0.36, 0.5, 0.7, 0.85, 0.95] {
            let mut p1s = vec![p0];
            if p0 >= x {
                p1s.push((p0 - x) / (1.0 - x));
            }
            for (i, &p1) in p1s.iter().enumerate() {
                let (sim, target) = choi_resource_pair(n, p0, p1).unwrap();
                let b = diamond_bounds(&sim, &target);
                gap = gap.max((b.upper - b.lower).abs());
                numeric_dev = numeric_dev.max((diamond_numeric(&sim, &target, opts).unwrap() - b.lower).abs());
                if i == 1 {
                    formula_dev = formula_dev.max((d1_formula(x, p0) - b.lower).abs());
                    formula_dev = formula_dev.max((ad_known_points(n, p0).unwrap().d1.unwrap() - b.lower).abs());
                }
                points += 1;
            }
        }
    }
    verdict(
        gap <= 1e-9 && numeric_dev <= 1e-4 && formula_dev <= 1e-9,
        format!("{points} known points: max |upper − lower| {gap:.1e}, max |numeric − exact| {numeric_dev:.1e}, max |D1 formula − trace norm| {formula_dev:.1e}"),
    )
}

fn ac6() -> Verdict {
    let mut checked = 0;
    let mut worst = f64::NEG_INFINITY;
    for n in 6..=10 {
        let x = xi(n).unwrap();
        let mut p0 = x;
        while p0 < 0.99 + 1e-12 {
            let k = ad_known_points(n, p0).unwrap();
            worst = worst.max(k.d1.unwrap() - k.d0);
            checked += 1;
            p0 += 0.01;
        }
    }
    verdict(worst <= 0.0, format!("{checked} grid points, max (D1 − D0) = {worst:.3e}"))
}

/// Grid minimiser of the dense trace norm over `p₁ ∈ [0, 1]`, step 1e−4.
fn grid_minimiser(n: usize, p0: f64) -> f64 {
    let target = ad_choi(p0, AdConvention::PlusBell).unwrap();
    (0..=10_000)
        .map(|k| {
            let p1 = k as f64 * 1e-4;
            (p1, trace_norm(&pbt_ad_closed_form(n, p1).unwrap(), &target))
        })
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap()
        .0
}

fn ac7() -> Verdict {
    let n = 4;
    let x = xi(n).unwrap();
    let mut pass = true;
    let mut detail = Vec::new();
    for p0 in [0.36, 0.7] {
        let (g, kink) = (grid_minimiser(n, p0), kink_location(x, p0));
        pass &= (g - kink).abs() <= 1e-4;
        detail.push(format!("p0={p0}: grid {g:.4} vs kink {kink:.6}"));
    }
    for p0 in [0.85, 0.95] {
        let (g, kink) = (grid_minimiser(n, p0), kink_location(x, p0));
        pass &= g < kink - 1e-4;
        detail.push(format!("p0={p0}: grid {g:.4} < kink {kink:.6}"));
    }
    let g = grid_minimiser(n, 0.95);
    let lo = (0.95 - x) / (1.0 - x);
    pass &= !(lo..=0.95).contains(&g);
    detail.push(format!("0.95 minimiser outside [{lo:.4}, 0.95]"));
    verdict(pass, detail.join("; "))
}

fn ac8() -> Verdict {
    let exact = p0_cross(0.0).unwrap() == 2.0 / 3.0;
    let mut sign_ok = true;
    let mut worst: f64 = 0.0;
    for n in [3, 4, 6] {
        for i in 0..100 {
            for j in 0..100 {
                let (p0, p1) = (i as f64 / 99.0, j as f64 / 99.0);
                let s = difference_spectrum(n, p0, p1).unwrap();
                sign_ok &= s.e3 <= 0.0 && s.e4 >= 0.0;
                let mut mine = s.eigenvalues().to_vec();
                mine.sort_by(f64::total_cmp);
                let (sim, target) = choi_resource_pair(n, p0, p1).unwrap();
                let dense = hermitian_eigenvalues(&(sim.matrix() - target.matrix()));
                for (a, b) in mine.iter().zip(&dense) {
                    worst = worst.max((a - b).abs());
                }
            }
        }
    }
    verdict(
        exact && sign_ok && worst <= 1e-12,
        format!("p0_cross(0) = 2/3: {exact}, e3 ≤ 0 ≤ e4 on grid: {sign_ok}, max eigenvalue deviation {worst:.1e}"),
    )
}

fn ac9() -> Verdict {
    let mut worst_rel: f64 = 0.0;
    for n in 2..=8 {
        for a in [0.51, 0.6, 0.75, 0.9] {
            let d = alternate_derivatives(n, a).unwrap();
            let h = 1e-6;
            let (p, m) = (alternate_xyz(n, a + h).unwrap(), alternate_xyz(n, a - h).unwrap());
            let fy = (p.y - m.y) / (2.0 * h);
            let fz = (p.z - m.z) / (2.0 * h);
            worst_rel = worst_rel.max((d.dy_da - fy).abs() / fy.abs()).max((d.dz_da - fz).abs() / fz.abs());
        }
    }
    let second: Vec<f64> = (2..=10).map(|n| alternate_derivatives(n, 0.5).unwrap().d2_sum_da2_at_half).collect();
    let starts_at_zero = second[0].abs() < 1e-6;
    let increasing = second.windows(2).all(|w| w[1] > w[0]);
    let below_one = second.iter().all(|&v| v < 1.0);
    let fd_ok = worst_rel <= 1e-5;
    verdict(
        fd_ok && starts_at_zero && increasing && below_one,
        format!(
            "derivatives vs finite differences: max rel. error {worst_rel:.1e} ({}); d²(y[a]+y[1−a])/da² at ½ for N=2..10: [{}] (expected 0 at N=2 rising towards 1)",
            if fd_ok { "ok" } else { "bad" },
            second.iter().map(|v| format!("{v:.4}")).collect::<Vec<_>>().join(", ")
        ),
    )
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(|v| v.parse().unwrap()).collect()).collect();
    (header, rows)
}

fn cli(args: &[String]) -> i32 {
    let (mut o, mut e) = (Vec::new(), Vec::new());
    let code = run_args(std::iter::once("pbt".to_string()).chain(args.iter().cloned()), &mut o, &mut e);
    if code != 0 {
        eprintln!("{}", String::from_utf8_lossy(&e));
    }
    code
}

fn column(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap()
}

fn min_of(rows: &[Vec<f64>], col: usize) -> f64 {
    rows.iter().map(|r| r[col]).fold(f64::INFINITY, f64::min)
}

fn ac10(dir: &Path, opts: &DiamondOptions) -> Verdict {
    let mut detail = Vec::new();
    let mut pass = true;
    let seed = opts.seed.to_string();
    let restarts = opts.restarts.to_string();
    for n in [4, 6] {
        let mut found = None;
        for p0 in [0.05, 0.1, 0.2] {
            let mut mins = Vec::new();
            for family in ["choi", "alternate"] {
                let path = dir.join(format!("sweep_n{n}_p0_{p0}_{family}.csv"));
                let args: Vec<String> = [
                    "ad-sweep",
                    "--ports",
                    &n.to_string(),
                    "--p0",
                    &p0.to_string(),
                    "--family",
                    family,
                    "--out",
                    path.to_str().unwrap(),
                    "--seed",
                    &seed,
                    "--restarts",
                    &restarts,
                ]
                .iter()
                .map(|s| s.to_string())
                .collect();
                pass &= cli(&args) == 0;
                let (h, rows) = read_csv(&path);
                mins.push(min_of(&rows, column(&h, "diamond_numeric")));
            }
            if mins[1] < mins[0] && found.is_none() {
                found = Some((p0, mins[0], mins[1]));
            }
        }
        match found {
            Some((p0, c, a)) => detail.push(format!("N={n} p0={p0}: alternate {a:.5} < choi {c:.5}")),
            None => {
                pass = false;
                detail.push(format!("N={n}: no low-p0 advantage"));
            }
        }
    }

    // figure 3 against figure 1: lower diamond norm at the known points and at the minimum
    let n = 4;
    for p0 in [0.36, 0.7] {
        let (hc, choi) = read_csv(&dir.join(format!("fig1_p0_{p0}.csv")));
        let (ha, alt) = read_csv(&dir.join(format!("fig3_p0_{p0}.csv")));
        let k = ad_known_points(n, p0).unwrap();
        let d2 = alternate_known_point(n, p0).unwrap().map(|k| k.d2);
        let known_ok = d2.is_some_and(|d2| d2 < k.d0 && k.d1.is_none_or(|d1| d2 < d1));
        let (mc, ma) = (min_of(&choi, column(&hc, "diamond_numeric")), min_of(&alt, column(&ha, "diamond_numeric")));
        pass &= known_ok && ma < mc;
        detail.push(format!(
            "Fig3 p0={p0}: D2 {:.4} vs D0 {:.4} / D1 {}, min alternate {ma:.4} < min choi {mc:.4}",
            d2.unwrap_or(f64::NAN),
            k.d0,
            k.d1.map_or("-".into(), |d| format!("{d:.4}"))
        ));
    }

    // figure 4: the alternate resource wins at low p0 and over a large part of the range
    for panel in ["fig4_left.csv", "fig4_right.csv"] {
        let (h, rows) = read_csv(&dir.join(panel));
        let (c, a) = (column(&h, "choi_diamond_numeric"), column(&h, "alt_diamond_numeric"));
        let low = (rows.len() / 10).max(1);
        let low_ok = rows[..low].iter().all(|r| r[a] <= r[c] + 1e-9);
        let wins = rows.iter().filter(|r| r[a] < r[c]).count();
        pass &= low_ok && 2 * wins >= rows.len();
        detail.push(format!("{panel}: alternate ≤ choi on lowest {low} rows: {low_ok}, wins {wins}/{}", rows.len()));
    }
    verdict(pass, detail.join("; "))
}

/// `(id ⊗ E)(|Φ+><Φ+|)` built entry by entry from Kraus operators.
fn choi_from_kraus_entrywise(ops: &[ComplexMatrix]) -> ComplexMatrix {
    ComplexMatrix::from_fn(4, 4, |r, c| {
        let (i, o, j, q) = (r >> 1, r & 1, c >> 1, c & 1);
        ops.iter().map(|k| k[(o, i)] * k[(q, j)].conj()).sum::<Complex64>() * 0.5
    })
}

/// Random valid Choi matrix: a random PSD matrix with its idler marginal normalised to I/2.
fn random_choi(rng: &mut ChaCha8Rng) -> ChoiMatrix {
    let m = linalg::random_density_matrix(4, rng);
    let t = ComplexMatrix::from_fn(2, 2, |a, b| m[(2 * a, 2 * b)] + m[(2 * a + 1, 2 * b + 1)]);
    let t_inv_sqrt = linalg::hermitian_function(&t, |v| 1.0 / (2.0 * v).sqrt());
    let s = linalg::kron(&t_inv_sqrt, &linalg::identity(2));
    ChoiMatrix::new(&s * m * &s).unwrap()
}

fn ac11() -> Verdict {
    let mut worst: f64 = 0.0;
    let mut trace: f64 = 0.0;
    for n in 2..=5 {
        let pk = protocol_kraus(n).unwrap();
        let mut all = family_cases(n);
        if n <= 4 {
            all.extend(random_cases(n, 20, 0xb11 + n as u64));
        }
        for (_, res) in &all {
            let via = pk.apply(res).unwrap();
            worst = worst.max(via.max_abs_diff(&pbt_choi(res).unwrap()));
            trace = trace.max((real_trace(via.matrix()) - 1.0).abs());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x11);
    let mut round: f64 = 0.0;
    for _ in 0..100 {
        let c = random_choi(&mut rng);
        let k = choi_to_kraus(&c).unwrap();
        round = round.max(linalg::max_abs_diff(&choi_from_kraus_entrywise(k.ops()), c.matrix()));
    }
    verdict(
        worst <= 1e-10 && trace <= 1e-10 && round <= 1e-12,
        format!("Λ vs pipeline {worst:.1e}, |Tr Λ − 1| {trace:.1e}, Choi→Kraus round trip {round:.1e}"),
    )
}

fn ac12(dir: &Path) -> Verdict {
    let mut rows_checked = 0;
    let mut bad = Vec::new();
    let mut files: Vec<_> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    for path in files.iter().filter(|p| p.extension().is_some_and(|e| e == "csv")) {
        let (h, rows) = read_csv(path);
        let prefixes: Vec<&str> =
            if h.iter().any(|c| c == "diamond_numeric") { vec![""] } else { vec!["choi_", "alt_"] };
        for pre in prefixes {
            let t = column(&h, &format!("{pre}trace_norm"));
            let num = column(&h, &format!("{pre}diamond_numeric"));
            let up = column(&h, &format!("{pre}diamond_upper"));
            for r in &rows {
                rows_checked += 1;
                if !(r[t] <= r[num] + 1e-6 && r[num] <= r[up] + 1e-6) {
                    bad.push(path.file_name().unwrap().to_string_lossy().to_string());
                }
            }
        }
    }
    bad.dedup();
    verdict(
        bad.is_empty() && rows_checked > 0,
        format!("{rows_checked} CLI rows in {} files, violations in {bad:?}", files.len()),
    )
}

fn main() {
    let opts = DiamondOptions::default();
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path();

    let figures_start = Instant::now();
    let mut figures_ok = true;
    for id in 1..=4 {
        let args: Vec<String> =
            ["figure", "--id", &id.to_string(), "--out", out.to_str().unwrap()].iter().map(|s| s.to_string()).collect();
        figures_ok &= cli(&args) == 0;
    }
    println!("figure CSVs written via the CLI in {:.1?} (exit codes ok: {figures_ok})", figures_start.elapsed());

    let checks: Vec<Check> = vec![
        ("AC-1", Box::new(ac1)),
        ("AC-2", Box::new(ac2)),
        ("AC-3", Box::new(ac3)),
        ("AC-4", Box::new(ac4)),
        ("AC-5", Box::new(move || ac5(&opts))),
        ("AC-6", Box::new(ac6)),
        ("AC-7", Box::new(ac7)),
        ("AC-8", Box::new(ac8)),
        ("AC-9", Box::new(ac9)),
        ("AC-10", Box::new(move || ac10(out, &opts))),
        ("AC-11", Box::new(ac11)),
        ("AC-12", Box::new(move || ac12(out))),
    ];
    let mut failed = 0;
    for (name, check) in &checks {
        let start = Instant::now();
        let v = check();
        if !v.pass {
            failed += 1;
        }
        println!("{name} {} [{:.1?}] {}", if v.pass { "PASS" } else { "FAIL" }, start.elapsed(), v.detail);
    }
    println!("{} of {} criteria passed", checks.len() - failed, checks.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

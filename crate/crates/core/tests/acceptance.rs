//! Acceptance run: one line per criterion, nonzero exit status on any failure.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use mfkit::catalog::{Catalog, D1Kind, D2Kind, RingId};
use mfkit::decomp::{mf_decompose, mf_iso};
use mfkit::error::Result as MfResult;
use mfkit::funcat::*;
use mfkit::homology::{
    ar_defect, ext1_dim, mu_multiplicity, stable_hom_at, stable_hom_dim, stable_hom_space, DimReport,
    HomologyConfig, Verdict,
};
use mfkit::matfac::{mf_cone, MFMorphism, MatFac, PolyMatrix};
use mfkit::poly::Poly;

type Check = std::result::Result<(), String>;
type Criterion = (&'static str, fn(&Catalog) -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T>(r: MfResult<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn cfg() -> HomologyConfig {
    HomologyConfig::default()
}

fn stable(r: &DimReport) -> std::result::Result<usize, String> {
    r.stable().ok_or_else(|| format!("verdict {} after {:?}", r.verdict, r.pairs))
}

fn st(m: &MatFac, n: &MatFac) -> std::result::Result<usize, String> {
    stable(&ok(stable_hom_dim(m, n, &cfg()))?)
}

fn ainf(c: &Catalog, n: u32) -> MatFac {
    c.ainf1(n).expect("n >= 1").mf
}

fn y_power(c: &Catalog, n: u32) -> Poly {
    Poly::var(c.field(), 1).pow(n)
}

fn hom_table(c: &Catalog) -> Check {
    let start = Instant::now();
    let i = c.ainf1_i().mf;
    for m in 1..=8 {
        for n in 1..=8 {
            let d = st(&ainf(c, m), &ainf(c, n))?;
            ensure!(d == 2 * m.min(n) as usize, "(I_{m}, I_{n}) gave {d}");
        }
    }
    for n in 1..=8 {
        let (a, b) = (st(&i, &ainf(c, n))?, st(&ainf(c, n), &i)?);
        ensure!(a == n as usize && b == n as usize, "(I, I_{n}) gave {a}, {b}");
    }
    let t = start.elapsed();
    ensure!(t < Duration::from_secs(60), "took {t:?}");
    Ok(())
}

fn ext_values(c: &Catalog) -> Check {
    let i1 = ainf(c, 1);
    for n in 1..=8 {
        let d = stable(&ok(ext1_dim(&ainf(c, n), &i1, &cfg()))?)?;
        ensure!(d == 2, "Ext(I_{n}, I_1) gave {d}");
    }
    let d = stable(&ok(ext1_dim(&c.ainf1_i().mf, &i1, &cfg()))?)?;
    ensure!(d == 1, "Ext(I, I_1) gave {d}");
    Ok(())
}

fn infinite_endomorphisms(c: &Catalog) -> Check {
    let strict = HomologyConfig {
        growth_run: 5,
        ..cfg()
    };
    let i = c.ainf1_i().mf;
    let r = ok(stable_hom_dim(&i, &i, &strict))?;
    ensure!(r.verdict == Verdict::Growing, "verdict {} after {:?}", r.verdict, r.pairs);
    let rises = r.pairs.windows(2).filter(|w| w[1].1 > w[0].1).count();
    ensure!(rises >= 5, "only {rises} increases in {:?}", r.pairs);
    Ok(())
}

fn recursion(c: &Catalog) -> Check {
    let mut window = vec![c.ainf1_i().mf];
    window.extend((1..=8).map(|n| ainf(c, n)));
    for u in &window {
        let base = st(u, &ainf(c, 1))? as i64;
        let mu: Vec<i64> = (1..=8)
            .map(|i| ok(mu_multiplicity(u, &ainf(c, i), 0)).map(|m| m as i64))
            .collect::<std::result::Result<_, _>>()?;
        for n in 1..=8i64 {
            let expected = n * base - (1..n).map(|i| 2 * (n - i) * mu[i as usize - 1]).sum::<i64>();
            let d = st(u, &ainf(c, n as u32))? as i64;
            ensure!(d == expected, "n = {n}: {d} against {expected}");
        }
    }
    Ok(())
}

fn all_exact(r: &ExactnessReport) -> bool {
    r.composite_zero
        && [&r.injective, &r.middle, &r.surjective]
            .iter()
            .all(|p| p.verdict == Verdict::Stable(0))
}

fn kernel_sequences(c: &Catalog) -> Check {
    for n in 1..=6 {
        let seq = ok(ainf1_kernel_sequence(c, n, &cfg(), 0))?;
        let r = ok(exactness_check(&seq, &cfg()))?;
        ensure!(all_exact(&r), "n = {n}: {r:?}");
    }
    let seq = ok(dinf2_kernel_sequence(c, &cfg(), 0))?;
    let r = ok(exactness_check(&seq, &cfg()))?;
    ensure!(all_exact(&r), "dinf2: {r:?}");
    Ok(())
}

fn ar_sequences(c: &Catalog) -> Check {
    let w = Window::standard(c, RingId::Ainf1, 8);
    for n in 1..=6 {
        let rec = ok(ar_verify(c, n, &w, &cfg()))?;
        ensure!(all_exact(&rec.exactness), "n = {n}: not exact {:?}", rec.exactness);
        ensure!(rec.non_split(), "n = {n}: {:?}", rec.split);
        for e in &rec.almost_split {
            ensure!(e.passes(), "n = {n}: cokernel at {} is {}", e.label, e.cokernel.verdict);
        }
        let seq = ok(ainf1_ar_sequence(c, n))?;
        for u in &w.entries {
            let (lhs, rhs) = ok(ar_defect(&u.mf, seq.z(), seq.y(), seq.x(), &cfg(), 0))?;
            ensure!(lhs == rhs, "n = {n}, U = {}: {lhs} against {rhs}", u.label);
        }
    }
    Ok(())
}

fn functor_vectors(c: &Catalog) -> Check {
    let w = Window::standard(c, RingId::Ainf1, 8);
    let is_i = |label: &str| label == "ainf1.I";
    let h1 = ok(dim_vector(&ok(h_functor(c, 1))?, &w, &cfg()))?;
    let hp = ok(dim_vector(&ok(h_prime_functor(c))?, &w, &cfg()))?;
    for (e, (a, b)) in w.entries.iter().zip(h1.iter().zip(&hp)) {
        let free = e.is_free();
        ensure!(*a == usize::from(!free), "H1 at {} is {a}", e.label);
        ensure!(*b == usize::from(!free && !is_i(&e.label)), "H'1 at {} is {b}", e.label);
    }
    let w2 = Window::standard(c, RingId::Dinf2, 4);
    let g1 = ok(dim_vector(&ok(g_functor(c))?, &w2, &cfg()))?;
    for (e, d) in w2.entries.iter().zip(&g1) {
        ensure!(*d == usize::from(!e.is_free()), "G1 at {} is {d}", e.label);
    }
    let hom = |n: u32| -> std::result::Result<Vec<i64>, String> {
        let x = if n == 0 { c.free(RingId::Ainf1).mf } else { ainf(c, n) };
        ok(hom_vector(&x, &w, &cfg()))?.iter().map(|r| stable(r).map(|d| d as i64)).collect()
    };
    for n in 1..=7 {
        let (up, mid, down) = (hom(n + 1)?, hom(n)?, hom(n - 1)?);
        let s = ok(dim_vector(&simple_functor(&ok(ainf1_ar_sequence(c, n))?), &w, &cfg()))?;
        for (i, e) in w.entries.iter().enumerate() {
            let delta = i64::from(e.label == format!("ainf1.I_{n}"));
            ensure!(s[i] as i64 == delta, "S_{n} at {} is {}", e.label, s[i]);
            ensure!(up[i] + down[i] == 2 * mid[i] - 2 * delta, "relation fails, n = {n}, U = {}", e.label);
        }
    }
    Ok(())
}

fn decomposition_counts(r: &BTreeMap<String, usize>) -> String {
    format!("{r:?}")
}

fn cone_calculus(c: &Catalog) -> Check {
    let k = c.field();
    let i = c.ainf1_i().mf;
    for n in 1..=6 {
        let cone = ok(mf_cone(&MFMorphism::scalar(&i, &y_power(c, n))))?;
        let r = ok(mf_decompose(&cone))?;
        let want: BTreeMap<String, usize> = [(format!("ainf1.I_{n}"), 1)].into();
        ensure!(r.multiplicities == want, "cone(y^{n}) gave {}", decomposition_counts(&r.multiplicities));
    }
    for exps in [vec![1, 1], vec![2, 3], vec![1, 4], vec![3, 5], vec![1, 2, 3], vec![2, 2, 4], vec![2, 4, 5]] {
        let l = exps.len();
        let src = ok(MatFac::direct_sum_all(i.hypersurface(), &vec![i.clone(); l]))?;
        let row: Vec<Poly> = exps.iter().map(|&n| y_power(c, n)).collect();
        let alpha = ok(PolyMatrix::from_rows(k, vec![row]))?;
        let cone = ok(mf_cone(&ok(MFMorphism::from_alpha(&src, &i, alpha))?))?;
        let r = ok(mf_decompose(&cone))?;
        let want: BTreeMap<String, usize> = [(format!("ainf1.I_{}", exps[0]), 1), ("ainf1.I".to_string(), l - 1)].into();
        ensure!(r.multiplicities == want, "{exps:?} gave {}", decomposition_counts(&r.multiplicities));
    }
    let di = c.dinf2_i().mf;
    let j = ok(dinf2_z_over_x(c))?;
    for n in 0..=3 {
        let yn = MFMorphism::scalar(&di, &y_power(c, n));
        let m_cone = ok(mf_cone(&ok(j.then(&yn))?))?;
        ensure!(ok(mf_iso(&m_cone, &ok(c.dinf2(D2Kind::M, n))?.mf))?, "cone((z/x) y^{n}) is not M_{n}");
        if n >= 1 {
            let n_cone = ok(mf_cone(&yn))?;
            ensure!(ok(mf_iso(&n_cone, &ok(c.dinf2(D2Kind::N, n))?.mf))?, "cone(y^{n}) is not N_{n}");
        }
    }
    // End(I) over the sharp ring: spanned by y^j and y^j z/x
    let r = ok(stable_hom_dim(&di, &di, &cfg()))?;
    ensure!(r.verdict == Verdict::Growing, "End(I) verdict {}", r.verdict);
    for w in r.pairs.windows(2) {
        ensure!(w[1].1 == w[0].1 + 2, "End(I) trace {:?}", r.pairs);
    }
    for &(t, d) in &r.pairs {
        let sol = ok(stable_hom_at(&di, &di, t, &cfg()))?;
        let mut rows = Vec::new();
        for e in 0..t {
            let s = MFMorphism::scalar(&di, &y_power(c, e));
            rows.push(sol.coords.from_matrix(&s.alpha().truncate(t)));
            rows.push(sol.coords.from_matrix(&ok(j.then(&s))?.alpha().truncate(t)));
        }
        let rank = sol.rank_modulo_homotopy(&rows);
        ensure!(rank == d, "at order {t} the span has rank {rank}, dimension {d}");
    }
    Ok(())
}

fn dinf1_claims(c: &Catalog) -> Check {
    let d1 = |kind, n| ok(c.dinf1(kind, n)).map(|e| e.mf);
    let b = ok(d1(D1Kind::Rx2, 0)?.direct_sum(&d1(D1Kind::Ry, 0)?))?;
    let check = |m: &MatFac, want: usize, what: &str| -> Check {
        let d = st(m, &b)?;
        ensure!(d == want, "{what} gave {d}");
        Ok(())
    };
    check(&d1(D1Kind::Ry, 0)?, 2, "R/(y)")?;
    check(&d1(D1Kind::Rx, 0)?, 1, "R/(x)")?;
    for n in 1..=5 {
        check(&d1(D1Kind::Mplus, n)?, 2, &format!("M_{n}+"))?;
        check(&d1(D1Kind::Nplus, n)?, 2, &format!("N_{n}+"))?;
    }
    let rx = d1(D1Kind::Rx, 0)?;
    let target = ok(rx.direct_sum(&d1(D1Kind::Rxy, 0)?))?;
    let r = ok(stable_hom_dim(&rx, &target, &cfg()))?;
    ensure!(r.verdict == Verdict::Growing, "R/(x) into R/(x) + R/(xy): {}", r.verdict);
    Ok(())
}

fn dinf2_table(c: &Catalog) -> Check {
    let l = |n| ok(c.dinf2_l(n)).map(|e| e.mf);
    let i = c.dinf2_i().mf;
    for m in 1..=4 {
        for n in 1..=4 {
            let d = st(&l(m)?, &l(n)?)?;
            ensure!(d == 2 * m.min(n) as usize, "(L_{m}, L_{n}) gave {d}");
        }
    }
    for n in 1..=4 {
        let (a, b) = (st(&i, &l(n)?)?, st(&l(n)?, &i)?);
        ensure!(a == n as usize && b == n as usize, "(I, L_{n}) gave {a}, {b}");
    }
    Ok(())
}

fn expected_sharp(kind: D1Kind, n: u32) -> String {
    match kind {
        D1Kind::Rx | D1Kind::Rxy => "dinf2.I".into(),
        D1Kind::Rx2 | D1Kind::Ry => "dinf2.M_0 (L_1)".into(),
        D1Kind::Mplus | D1Kind::Mminus => format!("dinf2.M_{n} (L_{})", 2 * n + 1),
        D1Kind::Nplus | D1Kind::Nminus => format!("dinf2.N_{n} (L_{})", 2 * n),
    }
}

fn knorrer(c: &Catalog) -> Check {
    for kind in D1Kind::ALL {
        let range = if kind.is_parametric() { 1..=3 } else { 0..=0 };
        for n in range {
            let s = ok(ok(c.dinf1(kind, n))?.mf.knorrer_sharp())?;
            let r = ok(mf_decompose(&s))?;
            let want: BTreeMap<String, usize> = [(expected_sharp(kind, n), 1)].into();
            ensure!(r.multiplicities == want, "{kind:?} {n} gave {}", decomposition_counts(&r.multiplicities));
        }
    }
    let w1 = Window::standard(c, RingId::Dinf1, 3).without_free();
    let w2 = Window::standard(c, RingId::Dinf2, 4).without_free();
    for x in &w1.entries {
        let ax = ok(x.mf.knorrer_sharp())?;
        for l in &w2.entries {
            let bl: Vec<MatFac> = ok(c.b_lookup(l))?.into_iter().map(|e| e.mf).collect();
            let b = ok(MatFac::direct_sum_all(x.mf.hypersurface(), &bl))?;
            let lhs = ok(stable_hom_dim(&ax, &l.mf, &cfg()))?.verdict;
            let rhs = ok(stable_hom_dim(&x.mf, &b, &cfg()))?.verdict;
            let agree = lhs == rhs && lhs != Verdict::Undetermined;
            ensure!(agree, "({}, {}): {lhs} against {rhs}", x.label, l.label);
        }
    }
    for l in [c.dinf2_i(), ok(c.dinf2_l(1))?, ok(c.dinf2_l(2))?] {
        let bl: Vec<MatFac> = ok(c.b_lookup(&l))?.into_iter().map(|e| e.mf).collect();
        let ab = ok(ok(MatFac::direct_sum_all(bl[0].hypersurface(), &bl))?.knorrer_sharp())?;
        let twin = ok(l.mf.direct_sum(&ok(l.mf.sigma_twist())?))?;
        ensure!(ok(mf_iso(&ab, &twin))?, "A(B({})) is not L + twist", l.label);
    }
    Ok(())
}

fn finite_type(c: &Catalog) -> Check {
    let w = Window::new(RingId::Node, c.finite_sample());
    let mut maps = Vec::new();
    for x in &w.entries {
        for y in &w.entries {
            let d = st(&x.mf, &y.mf)?;
            let space = ok(stable_hom_space(&x.mf, &y.mf, &cfg()))?;
            ensure!(space.basis.len() == d, "basis size for ({}, {})", x.label, y.label);
            maps.push(MFMorphism::zero(&x.mf, &y.mf));
            for a in space.basis {
                maps.push(ok(MFMorphism::from_alpha(&x.mf, &y.mf, a))?);
            }
        }
    }
    for m in &maps {
        let total: usize = ok(dim_vector(&functor_from(m), &w, &cfg()))?.iter().sum();
        ensure!(total <= 2 * w.len(), "functor total {total}");
    }
    let i = c.ainf1_i().mf;
    let f = hom_functor(&i);
    for n in 1..=8 {
        let d = stable(&ok(f.eval_report(&ainf(c, n), &cfg()))?)?;
        ensure!(d > 0, "Hom(I_{n}, I) vanishes");
    }
    Ok(())
}

fn properties(c: &Catalog) -> Check {
    use common::*;
    const CASES: u32 = 1000;
    let start = Instant::now();
    run_cases(CASES, ring_triple_strategy(), |((id, t), a, b, x)| ring_axioms(&a, &b, &x, id, t))
        .map_err(|e| format!("ring axioms: {e}"))?;
    run_cases(CASES, matrix_pair_strategy(), |(r, s, a, _)| rank_nullity(r, s, &a))
        .map_err(|e| format!("rank-nullity: {e}"))?;
    run_cases(CASES, matrix_pair_strategy(), |(r, s, a, b)| flatten_functorial(r, s, &a, &b))
        .map_err(|e| format!("flatten: {e}"))?;
    run_cases(CASES, sum_strategy(3), |s| decomposition_seed_invariant(c, &s))
        .map_err(|e| format!("decomposition: {e}"))?;
    run_cases(CASES, iso_triple_strategy(), |[a, b, d]| iso_coherent(c, &a, &b, &d))
        .map_err(|e| format!("isomorphism: {e}"))?;
    let t = start.elapsed();
    ensure!(t < Duration::from_secs(300), "took {t:?}");
    Ok(())
}

fn main() {
    let c = Catalog::default();
    let criteria: [Criterion; 13] = [
        ("hom table over x^2: 2 min(m,n) and n against I", hom_table),
        ("Ext^1(I_n, I_1) = 2 and Ext^1(I, I_1) = 1", ext_values),
        ("End(I) over x^2 grows without bound", infinite_endomorphisms),
        ("hom recursion in n on {I, I_1..I_8}", recursion),
        ("kernel sequences exact (x^2, n <= 6, and x^2 y + z^2)", kernel_sequences),
        ("AR sequences n <= 6: exact, non-split, almost split, defect", ar_sequences),
        ("dimension vectors of H1, H'1, G1, S_n and the hom relation", functor_vectors),
        ("cone decompositions and End(I) over x^2 y + z^2", cone_calculus),
        ("homs into R/(x^2) + R/(y) over x^2 y", dinf1_claims),
        ("hom table over x^2 y + z^2", dinf2_table),
        ("sharp images, adjunction, A(B(L)) = L + twist", knorrer),
        ("finite type witness on the node and unbounded support over x^2", finite_type),
        ("property suites, 1000 cases each", properties),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run(&c);
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS {name} ({ms} ms)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} ({ms} ms): {e}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

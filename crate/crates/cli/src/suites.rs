//! Named verification suites. Each assertion carries the mathematical
//! statement it checks.

use std::collections::BTreeMap;

use anyhow::Result;
use mfkit::catalog::{Catalog, CatalogEntry, D1Kind, D2Kind, RingId};
use mfkit::decomp::{mf_decompose_with, mf_iso, DecompConfig};
use mfkit::funcat::*;
use mfkit::homology::{
    ar_defect, ext1_dim, mu_multiplicity, stable_hom_at, stable_hom_dim, stable_hom_space, HomologyConfig,
    Verdict,
};
use mfkit::matfac::{mf_cone, MFMorphism, MatFac, PolyMatrix};
use mfkit::Poly;

use crate::report::{Recorder, Report, Status};
use crate::{usage, Context};

pub struct Suite {
    pub id: &'static str,
    pub summary: &'static str,
    run: fn(&Context, &mut Recorder) -> Result<()>,
}

pub const SUITES: &[Suite] = &[
    Suite {
        id: "hom-table",
        summary: "stHom(I_m, I_n) = 2 min(m, n) and stHom(I, I_n) = n over x^2",
        run: hom_table,
    },
    Suite {
        id: "ext-values",
        summary: "Ext^1(I_n, I_1) = 2 and Ext^1(I, I_1) = 1 over x^2",
        run: ext_values,
    },
    Suite {
        id: "end-growth",
        summary: "End(I) over x^2 is infinite dimensional",
        run: end_growth,
    },
    Suite {
        id: "hom-recursion",
        summary: "stHom(U, I_n) = n stHom(U, I_1) - sum 2(n - i) mu(U, I_i)",
        run: hom_recursion,
    },
    Suite {
        id: "kernel-exact",
        summary: "kernel sequences of the ideal maps are exact",
        run: kernel_exact,
    },
    Suite {
        id: "ar-all",
        summary: "0 -> I_n -> I_{n+1} + I_{n-1} -> I_n -> 0 is almost split",
        run: ar_all,
    },
    Suite {
        id: "functor-vectors",
        summary: "dimension vectors of H1, H'1, G1 and the simple functors",
        run: functor_vectors,
    },
    Suite {
        id: "cone-calculus",
        summary: "mapping cones of y^n and (z/x) y^n decompose as the catalog predicts",
        run: cone_calculus,
    },
    Suite {
        id: "dinf1-homs",
        summary: "homs from x^2 y modules into R/(x^2) + R/(y)",
        run: dinf1_homs,
    },
    Suite {
        id: "dinf2-table",
        summary: "stHom(L_m, L_n) = 2 min(m, n) and stHom(I, L_n) = n over x^2 y + z^2",
        run: dinf2_table,
    },
    Suite {
        id: "knorrer-images",
        summary: "sharp images of the x^2 y modules over x^2 y + z^2",
        run: knorrer_images,
    },
    Suite {
        id: "knorrer-adjunction",
        summary: "stHom(A X, L) = stHom(X, B L) and A(B(L)) = L + twist",
        run: knorrer_adjunction,
    },
    Suite {
        id: "finite-type",
        summary: "finitely presented functors on the node are finite dimensional",
        run: finite_type,
    },
];

pub fn find(id: &str) -> Result<&'static Suite> {
    SUITES
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| usage(format!("unknown suite {id:?}; see `mfkit suites list`")))
}

pub fn run_suite(ctx: &Context, id: &str) -> Result<Report> {
    let suite = find(id)?;
    let mut rec = Recorder::new();
    (suite.run)(ctx, &mut rec)?;
    Ok(rec.finish(suite.id, &ctx.params))
}

/// Report for one AR sequence ending in `I_n`, checked on `I, I_1..I_window`.
pub fn ar_report(ctx: &Context, n: u32) -> Result<Report> {
    if n == 0 {
        return Err(usage("AR sequences start at n = 1"));
    }
    let mut rec = Recorder::new();
    ar_one(ctx, &mut rec, n, ctx.window_or(8.max(n + 1)))?;
    Ok(rec.finish("ar-verify", &ctx.params))
}

fn ainf(c: &Catalog, n: u32) -> MatFac {
    c.ainf1(n).expect("n >= 1").mf
}

fn ainf_or_free(c: &Catalog, n: u32) -> MatFac {
    if n == 0 {
        c.free(RingId::Ainf1).mf
    } else {
        ainf(c, n)
    }
}

fn y_power(c: &Catalog, n: u32) -> Poly {
    Poly::var(c.field(), 1).pow(n)
}

fn decomp_cfg(ctx: &Context) -> DecompConfig {
    DecompConfig {
        seed: ctx.params.seed,
        ..DecompConfig::default()
    }
}

fn decomposes_as(ctx: &Context, m: &MatFac, want: &BTreeMap<String, usize>) -> mfkit::Result<(bool, String)> {
    let r = mf_decompose_with(m, &decomp_cfg(ctx))?;
    Ok((&r.multiplicities == want && r.residual.is_empty(), format!("{:?}", r.multiplicities)))
}

fn record_decomp(ctx: &Context, rec: &mut Recorder, id: String, stmt: &str, m: mfkit::Result<MatFac>, want: BTreeMap<String, usize>) {
    match m.and_then(|m| decomposes_as(ctx, &m, &want)) {
        Ok((ok, got)) => rec.truth(id, stmt, Ok(ok), format!("expected {want:?}, got {got}")),
        Err(e) => rec.truth(id, stmt, Err(e), ""),
    }
}

fn hom_table(ctx: &Context, rec: &mut Recorder) -> Result<()> {
    let (c, cfg) = (&ctx.cat, &ctx.cfg);
    let n_max = ctx.window_or(8);
    let stmt = "dim stHom(I_m, I_n) = 2 min(m, n) over k[[x, y]]/(x^2)";
    for m in 1..=n_max {
        for n in 1..=n_max {
            let r = stable_hom_dim(&ainf(c, m), &ainf(c, n), cfg);
            rec.dim(format!("I_{m},I_{n}"), stmt, r, 2 * m.min(n) as usize);
        }
    }
    let stmt = "dim stHom(I, I_n) = dim stHom(I_n, I) = n over k[[x, y]]/(x^2)";
    let i = c.ainf1_i().mf;
    for n in 1..=n_max {
        rec.dim(format!("I,I_{n}"), stmt, stable_hom_dim(&i, &ainf(c, n), cfg), n as usize);
        rec.dim(format!("I_{n},I"), stmt, stable_hom_dim(&ainf(c, n), &i, cfg), n as usize);
    }
    Ok(())
}

fn ext_values(ctx: &Context, rec: &mut Recorder) -> Result<()> {
    let (c, cfg) = (&ctx.cat, &ctx.cfg);
    let i1 = ainf(c, 1);
    for n in 1..=ctx.window_or(8) {
        rec.dim(format!("ext1(I_{n},I_1)"), "dim Ext^1(I_n, I_1) = 2", ext1_dim(&ainf(c, n), &i1, cfg), 2);
    }
    rec.dim("ext1(I,I_1)", "dim Ext^1(I, I_1) = 1", ext1_dim(&c.ainf1_i().mf, &i1, cfg), 1);
    Ok(())
}

fn end_growth(ctx: &Context, rec: &mut Recorder) -> Result<()> {
    let cfg = HomologyConfig {
        growth_run: 5,
        ..ctx.cfg
    };
    let i = ctx.cat.ainf1_i().mf;
    rec.verdict("End(I)", "End(I) is infinite dimensional over k[[x, y]]/(x^2)", stable_hom_dim(&i, &i, &cfg), Verdict::Growing);
    Ok(())
}

fn hom_recursion(ctx: &Context, rec: &mut Recorder) -> Result<()> {
    let (c, cfg) = (&ctx.cat, &ctx.cfg);
    let n_max = ctx.window_or(8);
    let stmt = "dim stHom(U, I_n) = n dim stHom(U, I_1) - sum_{i<n} 2(n - i) mu(U, I_i)";
    let mut window = vec![c.ainf1_i()];
    window.extend((1..=n_max).map(|n| c.ainf1(n).expect("n >= 1")));
    for u in &window {
        let base = match stable_hom_dim(&u.mf, &ainf(c, 1), cfg).and_then(|r| r.value()) {
            Ok(d) => d as i64,
            Err(e) => {
                rec.truth(format!("{},I_1", u.label), stmt, Err(e), "");
                continue;
            }
        };
        let mu: Vec<i64> = (1..=n_max)
            .map(|i| mu_multiplicity(&u.mf, &ainf(c, i), ctx.params.seed).map(|m| m as i64))
            .collect::<mfkit::Result<_>>()?;
        for n in 1..=n_max as i64 {
            let want = n * base - (1..n).map(|i| 2 * (n - i) * mu[i as usize - 1]).sum::<i64>();
            let want = usize::try_from(want).unwrap_or(usize::MAX);
            rec.dim(format!("{},I_{n}", u.label), stmt, stable_hom_dim(&u.mf, &ainf(c, n as u32), cfg), want);
        }
    }
    Ok(())
}

fn exactness(rec: &mut Recorder, id: String, stmt: &str, r: mfkit::Result<ExactnessReport>) {
    match r {
        Ok(rep) => {
            let detail = format!(
                "composite zero {}, defects {} {} {}",
                rep.composite_zero, rep.injective.verdict, rep.middle.verdict, rep.surjective.verdict
            );
            rec.truth(id, stmt, rep.verdict(), detail);
        }
        Err(e) => rec.truth(id, stmt, Err(e), ""),
    }
}

fn kernel_exact(ctx: &Context, rec: &mut Recorder) -> Result<()> {
    let (c, cfg, seed) = (&ctx.cat, &ctx.cfg, ctx.params.seed);
    for n in 1..=ctx.window_or(6) {
        let r = ainf1_kernel_sequence(c, n, cfg, seed).and_then(|s| exactness_check(&s, cfg));
        exactness(rec, format!("kernel(y^{n},-1)"), "0 -> I_n -> I + R -> I -> 0 is exact", r);
    }
    let r = dinf2_kernel_sequence(c, cfg, seed).and_then(|s| exactness_check(&s, cfg));
    exactness(rec, "kernel-dinf2".into(), "the kernel sequence of I + I + R -> I + I over x^2 y + z^2 is exact", r);
    Ok(())
}

fn ar_one(ctx: &Context, rec: &mut Recorder, n: u32, window: u32) -> Result<()> {
    let (c, cfg) = (&ctx.cat, &ctx.cfg);
    let w = Window::standard(c, RingId::Ainf1, window);
    let seq = ainf1_ar_sequence(c, n)?;
    let stmt = "0 -> I_n -> I_{n+1} + I_{n-1} -> I_n -> 0 is exact";
    exactness(rec, format!("ar{n}.exact"), stmt, exactness_check(&seq, cfg));
    let (status, detail) = match split_check(&seq, cfg) {
        Ok(SplitVerdict::NonSplit { order }) => (Status::Pass, format!("obstruction at order {order}")),
        Ok(SplitVerdict::Split) => (Status::Fail, "sequence splits".to_string()),
        Ok(SplitVerdict::Undetermined) => (Status::Undetermined, "no section found, no obstruction".to_string()),
        Err(e) => (Status::Fail, e.to_string()),
    };
    rec.push(format!("ar{n}.non-split"), "the AR sequence ending in I_n does not split", status, detail);
    let stmt = "every non-retraction U -> I_n factors through the middle term";
    for e in almost_split_check(&seq, &w, cfg)? {
        rec.verdict(format!("ar{n}.almost-split.{}", e.label), stmt, Ok(e.cokernel.clone()), expected_cokernel(&e));
    }
    let stmt = "stHom(U, Z) + stHom(U, X) - stHom(U, Y) = mu(U, X) + mu(U, X[1])";
    for u in &w.entries {
        let id = format!("ar{n}.defect.{}", u.label);
        match ar_defect(&u.mf, seq.z(), seq.y(), seq.x(), cfg, ctx.params.seed) {
            Ok((lhs, rhs)) => rec.truth(id, stmt, Ok(lhs == rhs), format!("{lhs} against {rhs}")),
            Err(e) => rec.truth(id, stmt, Err(e), ""),
        }
    }
    Ok(())
}

fn expected_cokernel(e: &AlmostSplitEntry) -> Verdict {
    Verdict::Stable(usize::from(e.is_end))
}

fn ar_all(ctx: &Context, rec: &mut Recorder) -> Result<()> {
    let n_max = ctx.window_or(6);
    for n in 1..=n_max {
        ar_one(ctx, rec, n, 8.max(n_max + 2))?;
    }
    Ok(())
}

fn functor_vectors(ctx: &Context, rec: &mut Recorder) -> Result<()> {
    let (c, cfg) = (&ctx.cat, &ctx.cfg);
    let n_max = ctx.window_or(8);
    let w = Window::standard(c, RingId::Ainf1, n_max);
    let vector = |f: &FpFunctor, w: &Window, name: &str, stmt: &str, want: &dyn Fn(&CatalogEntry) -> usize, rec: &mut Recorder| {
        match dim_vector_reports(f, w, cfg) {
            Ok(reps) => {
                for (e, r) in w.entries.iter().zip(reps) {
                    rec.dim(format!("{name}({})", e.label), stmt, Ok(r), want(e));
                }
            }
            Err(e) => rec.truth(name.to_string(), stmt, Err(e), ""),
        }
    };
    let nonfree = |e: &CatalogEntry| usize::from(!e.is_free());
    vector(&h_functor(c, 1)?, &w, "H1", "H1 is 1 on every non-projective indecomposable", &nonfree, rec);
    vector(
        &h_prime_functor(c)?,
        &w,
        "H'1",
        "H'1 is 1 on every I_n and vanishes on I",
        &|e| usize::from(!e.is_free() && e.label != "ainf1.I"),
        rec,
    );
    let w2 = Window::standard(c, RingId::Dinf2, ctx.window_or(4));
    vector(&g_functor(c)?, &w2, "G1", "G1 is 1 on every non-projective indecomposable", &nonfree, rec);
    for n in 1..n_max {
        let label = format!("ainf1.I_{n}");
        let stmt = "the simple functor S_n is 1 at I_n and 0 elsewhere";
        vector(&simple_functor(&ainf1_ar_sequence(c, n)?), &w, &format!("S{n}"), stmt, &|e| usize::from(e.label == label), rec);
    }
    let stmt = "(I_{n+1}, -) + (I_{n-1}, -) = 2 (I_n, -) - S_n";
    let hom = |n: u32| -> mfkit::Result<Vec<Option<usize>>> {
        Ok(hom_vector(&ainf_or_free(c, n), &w, cfg)?.iter().map(|r| r.stable()).collect())
    };
    for n in 1..n_max {
        let (up, mid, down) = (hom(n + 1)?, hom(n)?, hom(n - 1)?);
        for (i, e) in w.entries.iter().enumerate() {
            let delta = usize::from(e.label == format!("ainf1.I_{n}"));
            let id = format!("relation{n}({})", e.label);
            match (up[i], mid[i], down[i]) {
                (Some(a), Some(b), Some(d)) => rec.truth(id, stmt, Ok(a + d + 2 * delta == 2 * b), format!("{a} + {d} against 2*{b} - 2*{delta}")),
                _ => rec.push(id, stmt, Status::Undetermined, "a hom dimension did not stabilize"),
            }
        }
    }
    Ok(())
}

fn cone_calculus(ctx: &Context, rec: &mut Recorder) -> Result<()> {
    let c = &ctx.cat;
    let k = c.field();
    let i = c.ainf1_i().mf;
    for n in 1..=ctx.window_or(6) {
        let cone = mf_cone(&MFMorphism::scalar(&i, &y_power(c, n)));
        record_decomp(ctx, rec, format!("cone(y^{n})"), "cone(y^n: I -> I) = I_n", cone, [(format!("ainf1.I_{n}"), 1)].into());
    }
    let stmt = "cone((y^n1, ..., y^nl): I^l -> I) = I_n1 + I^(l-1) for n1 <= ... <= nl";
    for exps in [vec![1, 1], vec![2, 3], vec![1, 4], vec![1, 2, 3], vec![2, 2, 4]] {
        let l = exps.len();
        let cone = (|| {
            let src = MatFac::direct_sum_all(i.hypersurface(), &vec![i.clone(); l])?;
            let alpha = PolyMatrix::from_rows(k, vec![exps.iter().map(|&n| y_power(c, n)).collect()])?;
            mf_cone(&MFMorphism::from_alpha(&src, &i, alpha)?)
        })();
        let want = [(format!("ainf1.I_{}", exps[0]), 1), ("ainf1.I".to_string(), l - 1)].into();
        record_decomp(ctx, rec, format!("cone{exps:?}"), stmt, cone, want);
    }
    let di = c.dinf2_i().mf;
    let j = dinf2_z_over_x(c)?;
    for n in 0..=3 {
        let yn = MFMorphism::scalar(&di, &y_power(c, n));
        let m = c.dinf2(D2Kind::M, n)?.mf;
        let r = j.then(&yn).and_then(|g| mf_cone(&g)).and_then(|cone| mf_iso(&cone, &m));
        rec.truth(format!("cone((z/x)y^{n})"), "cone((z/x) y^n: I -> I) = M_n over x^2 y + z^2", r, "");
        if n >= 1 {
            let nn = c.dinf2(D2Kind::N, n)?.mf;
            let r = mf_cone(&yn).and_then(|cone| mf_iso(&cone, &nn));
            rec.truth(format!("cone(y^{n}).dinf2"), "cone(y^n: I -> I) = N_n over x^2 y + z^2", r, "");
        }
    }
    let stmt = "End(I) over x^2 y + z^2 has basis y^j, y^j z/x";
    let r = stable_hom_dim(&di, &di, &ctx.cfg)?;
    rec.verdict("End(I).growth", stmt, Ok(r.clone()), Verdict::Growing);
    let steps_ok = r.pairs.windows(2).all(|w| w[1].1 == w[0].1 + 2);
    rec.truth("End(I).step", stmt, Ok(steps_ok), format!("trace {:?}", r.pairs));
    for &(t, d) in &r.pairs {
        let sol = stable_hom_at(&di, &di, t, &ctx.cfg)?;
        let mut rows = Vec::new();
        for e in 0..t {
            let s = MFMorphism::scalar(&di, &y_power(c, e));
            rows.push(sol.coords.from_matrix(&s.alpha().truncate(t)));
            rows.push(sol.coords.from_matrix(&j.then(&s)?.alpha().truncate(t)));
        }
        let rank = sol.rank_modulo_homotopy(&rows);
        rec.truth(format!("End(I).span@{t}"), stmt, Ok(rank == d), format!("rank {rank}, dimension {d}"));
    }
    Ok(())
}

fn dinf1_homs(ctx: &Context, rec: &mut Recorder) -> Result<()> {
    let (c, cfg) = (&ctx.cat, &ctx.cfg);
    let d1 = |kind, n| c.dinf1(kind, n).map(|e| e.mf);
    let b = d1(D1Kind::Rx2, 0)?.direct_sum(&d1(D1Kind::Ry, 0)?)?;
    let stmt = "dim stHom(X, R/(x^2) + R/(y)) over x^2 y";
    rec.dim("R/(y)", stmt, stable_hom_dim(&d1(D1Kind::Ry, 0)?, &b, cfg), 2);
    rec.dim("R/(x)", stmt, stable_hom_dim(&d1(D1Kind::Rx, 0)?, &b, cfg), 1);
    for n in 1..=ctx.window_or(5) {
        rec.dim(format!("M_{n}+"), stmt, stable_hom_dim(&d1(D1Kind::Mplus, n)?, &b, cfg), 2);
        rec.dim(format!("N_{n}+"), stmt, stable_hom_dim(&d1(D1Kind::Nplus, n)?, &b, cfg), 2);
    }
    let rx = d1(D1Kind::Rx, 0)?;
    let target = rx.direct_sum(&d1(D1Kind::Rxy, 0)?)?;
    rec.verdict("R/(x),R/(x)+R/(xy)", "stHom(R/(x), R/(x) + R/(xy)) is infinite dimensional", stable_hom_dim(&rx, &target, cfg), Verdict::Growing);
    Ok(())
}

fn dinf2_table(ctx: &Context, rec: &mut Recorder) -> Result<()> {
    let (c, cfg) = (&ctx.cat, &ctx.cfg);
    let n_max = ctx.window_or(4);
    let l = |n| c.dinf2_l(n).map(|e| e.mf);
    let stmt = "dim stHom(L_m, L_n) = 2 min(m, n) over k[[x, y, z]]/(x^2 y + z^2)";
    for m in 1..=n_max {
        for n in 1..=n_max {
            rec.dim(format!("L_{m},L_{n}"), stmt, stable_hom_dim(&l(m)?, &l(n)?, cfg), 2 * m.min(n) as usize);
        }
    }
    let stmt = "dim stHom(I, L_n) = dim stHom(L_n, I) = n over k[[x, y, z]]/(x^2 y + z^2)";
    let i = c.dinf2_i().mf;
    for n in 1..=n_max {
        rec.dim(format!("I,L_{n}"), stmt, stable_hom_dim(&i, &l(n)?, cfg), n as usize);
        rec.dim(format!("L_{n},I"), stmt, stable_hom_dim(&l(n)?, &i, cfg), n as usize);
    }
    Ok(())
}

/// Catalog label of the sharp image of a one-dimensional module.
pub fn expected_sharp(kind: D1Kind, n: u32) -> String {
    match kind {
        D1Kind::Rx | D1Kind::Rxy => "dinf2.I".into(),
        D1Kind::Rx2 | D1Kind::Ry => "dinf2.M_0 (L_1)".into(),
        D1Kind::Mplus | D1Kind::Mminus => format!("dinf2.M_{n} (L_{})", 2 * n + 1),
        D1Kind::Nplus | D1Kind::Nminus => format!("dinf2.N_{n} (L_{})", 2 * n),
    }
}

fn knorrer_images(ctx: &Context, rec: &mut Recorder) -> Result<()> {
    let stmt = "A(R/(x)) = A(R/(xy)) = I, A(R/(x^2)) = A(R/(y)) = L_1, A(M_n) = L_{2n+1}, A(N_n) = L_{2n}";
    for kind in D1Kind::ALL {
        let range = if kind.is_parametric() { 1..=ctx.window_or(3) } else { 0..=0 };
        for n in range {
            let entry = ctx.cat.dinf1(kind, n)?;
            let sharp = entry.mf.knorrer_sharp();
            record_decomp(ctx, rec, format!("A({})", entry.label), stmt, sharp, [(expected_sharp(kind, n), 1)].into());
        }
    }
    Ok(())
}

fn knorrer_adjunction(ctx: &Context, rec: &mut Recorder) -> Result<()> {
    let (c, cfg) = (&ctx.cat, &ctx.cfg);
    let n_max = ctx.window_or(3);
    let w1 = Window::standard(c, RingId::Dinf1, n_max).without_free();
    let w2 = Window::standard(c, RingId::Dinf2, n_max + 1).without_free();
    let stmt = "stHom(A X, L) = stHom(X, B L)";
    for x in &w1.entries {
        let ax = x.mf.knorrer_sharp()?;
        for l in &w2.entries {
            let bl: Vec<MatFac> = c.b_lookup(l)?.into_iter().map(|e| e.mf).collect();
            let b = MatFac::direct_sum_all(x.mf.hypersurface(), &bl)?;
            let id = format!("{},{}", x.label, l.label);
            let lhs = stable_hom_dim(&ax, &l.mf, cfg)?.verdict;
            let rhs = stable_hom_dim(&x.mf, &b, cfg)?.verdict;
            let detail = format!("{lhs} against {rhs}");
            if lhs == Verdict::Undetermined || rhs == Verdict::Undetermined {
                rec.push(id, stmt, Status::Undetermined, detail);
            } else {
                rec.truth(id, stmt, Ok(lhs == rhs), detail);
            }
        }
    }
    let stmt = "A(B(L)) = L + sigma* L";
    for l in [c.dinf2_i(), c.dinf2_l(1)?, c.dinf2_l(2)?] {
        let r = (|| {
            let bl: Vec<MatFac> = c.b_lookup(&l)?.into_iter().map(|e| e.mf).collect();
            let ab = MatFac::direct_sum_all(bl[0].hypersurface(), &bl)?.knorrer_sharp()?;
            mf_iso(&ab, &l.mf.direct_sum(&l.mf.sigma_twist()?)?)
        })();
        rec.truth(format!("A(B({}))", l.label), stmt, r, "");
    }
    Ok(())
}

fn finite_type(ctx: &Context, rec: &mut Recorder) -> Result<()> {
    let (c, cfg) = (&ctx.cat, &ctx.cfg);
    let w = Window::new(RingId::Node, c.finite_sample());
    let mut maps = Vec::new();
    for x in &w.entries {
        for y in &w.entries {
            let r = stable_hom_dim(&x.mf, &y.mf, cfg)?;
            let finite = matches!(r.verdict, Verdict::Stable(_));
            rec.truth(format!("{},{}", x.label, y.label), "stHom between node modules is finite dimensional", Ok(finite), r.verdict.to_string());
            maps.push((format!("0:{}->{}", x.label, y.label), MFMorphism::zero(&x.mf, &y.mf)));
            for (b, a) in stable_hom_space(&x.mf, &y.mf, cfg)?.basis.into_iter().enumerate() {
                maps.push((format!("e{b}:{}->{}", x.label, y.label), MFMorphism::from_alpha(&x.mf, &y.mf, a)?));
            }
        }
    }
    let stmt = "a finitely presented functor on the node has finite total dimension";
    for (name, m) in &maps {
        match dim_vector_reports(&functor_from(m), &w, cfg) {
            Ok(reps) => {
                let finite = reps.iter().all(|r| matches!(r.verdict, Verdict::Stable(_)));
                let dims: Vec<String> = reps.iter().map(crate::report::cell).collect();
                rec.truth(format!("F[{name}]"), stmt, Ok(finite), dims.join(","));
            }
            Err(e) => rec.truth(format!("F[{name}]"), stmt, Err(e), ""),
        }
    }
    let i = c.ainf1_i().mf;
    let f = hom_functor(&i);
    for n in 1..=ctx.window_or(8) {
        let r = f.eval_report(&ainf(c, n), cfg);
        let (status, detail) = match &r {
            Ok(rep) => match rep.verdict {
                Verdict::Stable(0) => (Status::Fail, "vanishes".to_string()),
                Verdict::Undetermined => (Status::Undetermined, format!("trace {:?}", rep.pairs)),
                v => (Status::Pass, v.to_string()),
            },
            Err(e) => (Status::Fail, e.to_string()),
        };
        rec.push(format!("Hom(I_{n},I)"), "over x^2 the functor Hom(-, I) is nonzero on every I_n", status, detail);
    }
    Ok(())
}

//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Runs without the libtest harness so the lines always print.

use std::time::{Duration, Instant};

use avg_core::decide::{decide, Verdict};
use avg_core::findim::analysis::{ad_eigen, derived_series, kernel, kernel_equals_brackets};
use avg_core::findim::lie::{induced_bracket, induced_by_averaging, BracketTable, InduceResult};
use avg_core::findim::operator::{
    functional_operator, is_averaging, multiplication_operator, poly_apply, scale,
};
use avg_core::findim::{FindimError, StructureAlgebra};
use avg_core::freeavg::chain::chain_witness;
use avg_core::freeavg::decompose::{bracket_decompose, recompose};
use avg_core::freeavg::on_algebra::{fa_f, fa_induced_hom, fa_mul, FreeOnAlgebraElement};
use avg_core::freeavg::{
    apply_redex, f_mode, mul_mode, normalize, reduce_reynolds_monomial, reynolds_redexes, Mode,
};
use avg_core::gen::{self, OperatorKind, PolyShape};
use avg_core::linalg::{Matrix, Vector};
use avg_core::par::Execution;
use avg_core::scalar::{q, qi, Rational, Ring, Scalar};
use avg_core::terms::{parse_equation, IdentitySet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn all_ok(results: Vec<Result<(), String>>) -> Result<(), String> {
    results.into_iter().collect()
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn gaussian() -> StructureAlgebra {
    StructureAlgebra::from_monic_poly(Ring::Rational, &[qi(1), qi(0), qi(1)]).unwrap()
}

fn imaginary_part() -> Matrix {
    Matrix::from_rows(Ring::Rational, &[vec![qi(0), qi(1)], vec![qi(0), qi(0)]]).unwrap()
}

fn decision_examples() -> Outcome {
    let claim = parse_equation("f(f(v1)*f(v2)) = f(v1)*f(v2)").map_err(err)?;
    ensure(decide(IdentitySet::UnitaryAveraging, &claim) == Verdict::Holds, "unitary hypothesis should imply the claim")?;
    match decide(IdentitySet::Averaging, &claim) {
        Verdict::Fails(w) if w.to_string() == "y[1]*y[x1]*y[x2] - y[x1]*y[x2]" => Ok(format!("witness {w}")),
        other => Err(format!("unexpected verdict {other}")),
    }
}

fn law_suite() -> Outcome {
    let results = Execution::default().map_range(500, |i| {
        let mut r = rng(1000 + i as u64);
        let shape = PolyShape { x_vars: 3, max_degree: 4, max_terms: 4, coeff_bound: 5 };
        let raw_p = gen::random_free_poly(&mut r, shape);
        let raw_q = gen::random_free_poly(&mut r, shape);
        for mode in Mode::ALL {
            let (p, qq) = (normalize(mode, &raw_p), normalize(mode, &raw_q));
            let (fp, fq) = (f_mode(mode, &p), f_mode(mode, &qq));
            let prod = mul_mode(mode, &fp, &fq);
            ensure(f_mode(mode, &mul_mode(mode, &p, &fq)) == prod, format!("averaging law, {mode}, pair {i}"))?;
            match mode {
                Mode::Unitary => {
                    let lhs = &prod + &f_mode(mode, &prod);
                    let rhs = &f_mode(mode, &mul_mode(mode, &p, &fq)) + &f_mode(mode, &mul_mode(mode, &qq, &fp));
                    ensure(lhs == rhs, format!("Reynolds identity in unitary mode, pair {i}"))?;
                }
                Mode::Reynolds => ensure(f_mode(mode, &prod) == prod, format!("Reynolds law, pair {i}"))?,
                Mode::Plain => {}
            }
        }
        Ok(())
    });
    all_ok(results)?;
    Ok("500 pairs x 3 modes".into())
}

fn confluence() -> Outcome {
    let results = Execution::default().map_range(200, |i| {
        let mut r = rng(2000 + i as u64);
        let m = gen::random_y1_heavy_monomial(&mut r, 3);
        let expected = reduce_reynolds_monomial(&m);
        for _ in 0..10 {
            let mut cur = m.clone();
            loop {
                let rs = reynolds_redexes(&cur);
                if rs.is_empty() {
                    break;
                }
                cur = apply_redex(&cur, rs[r.gen_range(0..rs.len())]);
            }
            ensure(cur == expected, format!("monomial {m}: {cur} vs {expected}"))?;
        }
        Ok(())
    });
    all_ok(results)?;
    Ok("200 monomials x 10 strategies".into())
}

fn kernel_decomposition() -> Outcome {
    let results = Execution::default().map_range(100, |i| {
        let w = gen::random_kernel_element(&mut rng(3000 + i as u64), 3);
        ensure(w.degree().unwrap_or(0) <= 4, "degree bound")?;
        let pairs = bracket_decompose(&w).map_err(err)?;
        ensure(recompose(&pairs) == w, format!("element {i} does not recompose"))
    });
    all_ok(results)?;
    Ok("100 kernel elements".into())
}

fn operator_calculus() -> Outcome {
    let mut r = rng(4000);
    for i in 0..50 {
        let (a, f) = gen::random_averaging_algebra(&mut r, 4, OperatorKind::Averaging);
        ensure(is_averaging(&a, &f).map_err(err)?.holds(), format!("generator produced a non-averaging operator ({i})"))?;
        let c = gen::small_scalar(&mut r, 5);
        let rf = scale(&a, &c, &f).map_err(err)?;
        ensure(is_averaging(&a, &rf.operator).map_err(err)?.holds(), format!("rF not averaging ({i})"))?;
        let p = gen::random_poly_no_constant(&mut r, 3);
        let pf = poly_apply(&a, &p, &f).map_err(err)?;
        ensure(is_averaging(&a, &pf.operator).map_err(err)?.holds(), format!("P(F) not averaging ({i})"))?;
    }
    let (a, f) = (gaussian(), imaginary_part());
    let rejected = matches!(poly_apply(&a, &[qi(1), qi(1)], &f), Err(FindimError::ConstantTerm));
    let f_plus_id = f.add(&Matrix::identity(Ring::Rational, 2)).map_err(err)?;
    let check = is_averaging(&a, &f_plus_id).map_err(err)?;
    ensure(rejected && !check.holds(), "f + id should be rejected and fail the law")?;
    Ok(format!("50 operators; f + id fails at {check:?}"))
}

fn induced_lie() -> Outcome {
    let mut r = rng(5000);
    let mut instances: Vec<(StructureAlgebra, Matrix)> = vec![(gaussian(), imaginary_part())];
    instances.extend((0..100).map(|_| gen::random_averaging_algebra(&mut r, 4, OperatorKind::Averaging)));
    for (k, (a, f)) in instances.iter().enumerate() {
        let l = induced_bracket(a, f).map_err(err)?;
        ensure(l.check_lie().ok(), format!("instance {k} fails the Lie axioms"))?;
        ensure(derived_series(a, &l).zero_at().is_some_and(|s| s <= 2), format!("instance {k} not solvable of length 2"))?;
    }
    Ok(format!("{} operators", instances.len()))
}

fn q3_example() -> Result<(StructureAlgebra, BracketTable), String> {
    let q = StructureAlgebra::scalars(Ring::Rational);
    let a = StructureAlgebra::direct_product(&StructureAlgebra::direct_product(&q, &q).map_err(err)?, &q).map_err(err)?;
    let e = |i: usize| -> Vector { (0..3).map(|k| if k == i { qi(1) } else { qi(0) }).collect() };
    let neg = |v: Vector| -> Vector { v.iter().map(|x| -x).collect() };
    let z = vec![qi(0); 3];
    let table = vec![
        vec![z.clone(), e(0), e(1)],
        vec![neg(e(0)), z.clone(), e(2)],
        vec![neg(e(1)), neg(e(2)), z],
    ];
    let l = BracketTable::lie(&a, table).map_err(err)?;
    Ok((a, l))
}

fn solver() -> Outcome {
    let (a, l) = q3_example()?;
    match induced_by_averaging(&a, &l).map_err(err)? {
        InduceResult::NotEndoInduced { .. } | InduceResult::NoSolution => {}
        other => return Err(format!("Q^3 example should not be induced: {other:?}")),
    }
    let results = Execution::default().map_range(200, |i| {
        let (a, l) = gen::random_dim2_bracket(&mut rng(6000 + i as u64));
        match induced_by_averaging(&a, &l).map_err(err)? {
            InduceResult::Induced { operator, .. } => {
                ensure(is_averaging(&a, &operator).map_err(err)?.holds(), format!("instance {i}: not averaging"))?;
                ensure(induced_bracket(&a, &operator).map_err(err)? == l, format!("instance {i}: bracket differs"))
            }
            other => Err(format!("instance {i}: {other:?}")),
        }
    });
    all_ok(results)?;
    Ok("Q^3 not induced; 200 dim-2 instances induced".into())
}

fn eigen() -> Outcome {
    let domains = [
        vec![qi(1), qi(0), qi(1)],
        vec![qi(-2), qi(0), qi(1)],
        vec![qi(-2), qi(0), qi(0), qi(1)],
    ];
    let mut r = rng(7000);
    for p in &domains {
        let a = StructureAlgebra::from_monic_poly(Ring::Rational, p).map_err(err)?;
        for _ in 0..20 {
            let v = gen::small_vector(&mut r, a.dim(), 3);
            let f = if r.gen_bool(0.75) { functional_operator(&a, &v).map_err(err)? } else { multiplication_operator(&a, &v) };
            let elem = gen::small_vector(&mut r, a.dim(), 3);
            ad_eigen(&a, &f, &elem).map_err(err)?;
        }
    }
    let (a, f) = (gaussian(), imaginary_part());
    let es = ad_eigen(&a, &f, &[qi(0), qi(1)]).map_err(err)?;
    let values: Vec<Rational> = es.iter().map(|(v, _)| v.clone()).collect();
    let minus_one = Rational::from_integer((-1).into());
    ensure(values == vec![minus_one.clone(), Rational::from_integer(0.into())], format!("eigenvalues {values:?}"))?;
    ensure(es[0].1 == kernel(&f), "V_{-1} should be ker F")?;
    Ok("60 random elements agree; Q[i] gives {0, -1}".into())
}

fn kernel_brackets() -> Outcome {
    let z6 = Ring::Zmod(6);
    let a = StructureAlgebra::scalars(z6);
    let f = Matrix::from_rows(z6, &[vec![z6.from_i64(2)]]).map_err(err)?;
    let kb = kernel_equals_brackets(&a, &f).map_err(err)?;
    ensure(!kb.equal && kb.brackets.is_zero() && !kb.kernel.is_zero(), "Z/6 example should have ker F != 0 = [A,A]")?;
    let mut r = rng(8000);
    for i in 0..50 {
        let (a, f) = gen::random_averaging_algebra(&mut r, 4, OperatorKind::UnitaryAveraging);
        ensure(kernel_equals_brackets(&a, &f).map_err(err)?.equal, format!("unitary instance {i}"))?;
    }
    Ok(format!("Z/6 kernel {}; 50 unitary instances equal", kb.kernel))
}

fn chain() -> Outcome {
    let c = chain_witness(1, 10).map_err(err)?;
    ensure(c.len() == 10, "length")?;
    ensure(c.iter().all(|i| i.is_averaging_ideal()), "not averaging ideals")?;
    for w in c.windows(2) {
        let fresh = w[1].generators().last().unwrap();
        ensure(w[1].contains_ideal(&w[0]) && !w[0].contains(fresh), "inclusion not strict")?;
    }
    Ok(format!("top ideal {}", c[9]))
}

fn random_fa(r: &mut impl Rng, dim: usize) -> FreeOnAlgebraElement {
    let mut x = FreeOnAlgebraElement::zero(Ring::Rational, dim);
    for _ in 0..r.gen_range(1..=3) {
        let slots: Vec<usize> = (0..r.gen_range(0..=2)).map(|_| r.gen_range(0..dim)).collect();
        let c: Scalar = gen::small_scalar(r, 4);
        x.add_term(r.gen_range(0..dim), slots, c).unwrap();
    }
    x
}

fn free_on_algebra() -> Outcome {
    let a = StructureAlgebra::from_monic_poly(Ring::Rational, &[qi(-2), qi(0), qi(1)]).map_err(err)?;
    let mut r = rng(9000);
    for i in 0..100 {
        let (x, y) = (random_fa(&mut r, 2), random_fa(&mut r, 2));
        let lhs = fa_f(&fa_mul(&x, &fa_f(&y, &a).map_err(err)?, &a).map_err(err)?, &a).map_err(err)?;
        let rhs = fa_mul(&fa_f(&x, &a).map_err(err)?, &fa_f(&y, &a).map_err(err)?, &a).map_err(err)?;
        ensure(lhs == rhs, format!("averaging identity fails on pair {i}"))?;
    }
    let qa = StructureAlgebra::scalars(Ring::Rational);
    let b = gaussian();
    let theta = Matrix::from_rows(Ring::Rational, &[vec![qi(1)], vec![q(0, 1)]]).map_err(err)?;
    for i in 0..100 {
        let x = random_fa(&mut r, 1);
        let lhs = fa_induced_hom(&theta, &qa, &b, &fa_f(&x, &qa).map_err(err)?).map_err(err)?;
        let rhs = fa_f(&fa_induced_hom(&theta, &qa, &b, &x).map_err(err)?, &b).map_err(err)?;
        ensure(lhs == rhs, format!("induced map does not commute with f on element {i}"))?;
    }
    Ok("100 pairs; 100 elements".into())
}

struct Criterion {
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { name: "decision examples", limit: secs(1), run: decision_examples },
        Criterion { name: "free-object law suite", limit: secs(30), run: law_suite },
        Criterion { name: "Reynolds normal-form confluence", limit: secs(5), run: confluence },
        Criterion { name: "kernel decomposition", limit: secs(10), run: kernel_decomposition },
        Criterion { name: "operator calculus", limit: None, run: operator_calculus },
        Criterion { name: "induced Lie suite", limit: None, run: induced_lie },
        Criterion { name: "induced-by-averaging solver", limit: secs(30), run: solver },
        Criterion { name: "ad eigenstructure cross-check", limit: None, run: eigen },
        Criterion { name: "kernel vs bracket span", limit: None, run: kernel_brackets },
        Criterion { name: "ascending chain witness", limit: None, run: chain },
        Criterion { name: "free averaging algebra on an algebra", limit: None, run: free_on_algebra },
    ];
    let mut failed = 0;
    for (k, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS {:>2} {} ({elapsed:.2?}): {detail}", k + 1, c.name),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {} ({elapsed:.2?}): {why}", k + 1, c.name);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

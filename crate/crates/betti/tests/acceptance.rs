//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its runtime when it holds. Tolerances and runtime bounds are pinned in
//! the constants below.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use betti::cli::{run_compute, ComputeArgs, InputFormat};
use betti::complex::{build_vr_filtration, Filtration, Simplex};
use betti::field::PrimeField;
use betti::homology::{
    betti_numbers, build_boundary_matrix, oracle, persistent_betti_from_reduction, reduce,
    BoundaryMatrix, ReductionResult,
};
use betti::metric::{pairwise_distances, Metric, PointCloud};
use betti::persistence::{pairs_to_scales, read_pairs, write_pairs, PersistencePair};

const SCALE_TOLERANCE: f64 = 1e-9;
const PERMUTATION_TOLERANCE: f64 = 1e-12;
const CIRCLE_DOMINANCE: f64 = 3.0;

fn report(criterion: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    assert!(
        elapsed < budget,
        "{criterion}: runtime {elapsed:?} exceeds budget {budget:?}"
    );
    println!("acceptance {criterion}: PASS ({elapsed:?})");
}

fn f2() -> PrimeField {
    PrimeField::default()
}

fn unit_square_cloud() -> PointCloud {
    PointCloud::from_rows(vec![
        vec![0.0, 0.0],
        vec![1.0, 0.0],
        vec![1.0, 1.0],
        vec![0.0, 1.0],
    ])
    .unwrap()
}

fn circle_cloud(n: usize) -> PointCloud {
    let rows = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            vec![angle.cos(), angle.sin()]
        })
        .collect();
    PointCloud::from_rows(rows).unwrap()
}

fn random_cloud(rng: &mut ChaCha8Rng, max_points: usize) -> PointCloud {
    let m = rng.gen_range(1..=max_points);
    let dim = rng.gen_range(2..=3);
    let rows = (0..m)
        .map(|_| (0..dim).map(|_| rng.gen::<f64>()).collect())
        .collect();
    PointCloud::from_rows(rows).unwrap()
}

fn scale_pairs(filtration: &Filtration) -> Vec<PersistencePair> {
    let matrix = build_boundary_matrix(filtration, f2()).unwrap();
    pairs_to_scales(&reduce(&matrix), filtration)
}

#[test]
fn criterion_1_sphere_betti_numbers() {
    let started = Instant::now();
    let mut simplices = Vec::new();
    for v in 0..4usize {
        simplices.push(Simplex::new(vec![v], 0.0).unwrap());
    }
    for a in 0..4usize {
        for b in a + 1..4 {
            simplices.push(Simplex::new(vec![a, b], 1.0).unwrap());
        }
    }
    for a in 0..4usize {
        for b in a + 1..4 {
            for c in b + 1..4 {
                simplices.push(Simplex::new(vec![a, b, c], 2.0).unwrap());
            }
        }
    }
    let sphere = Filtration::from_simplices(simplices).unwrap();
    for p in [2u32, 3, 5] {
        let field = PrimeField::new(p).unwrap();
        let betti = betti_numbers(&sphere, sphere.len(), field, 2).unwrap();
        assert_eq!(betti, vec![1, 0, 1], "tetrahedron boundary over F_{p}");
    }
    report("1 (sphere betti numbers)", started, Duration::from_secs(1));
}

#[test]
fn criterion_2_square_loop() {
    let started = Instant::now();
    let dm = pairwise_distances(&unit_square_cloud(), Metric::Euclidean);
    let filtration = build_vr_filtration(&dm, 2, f64::INFINITY);
    let pairs = scale_pairs(&filtration);
    let matching: Vec<&PersistencePair> = pairs
        .iter()
        .filter(|p| {
            p.dim == 1
                && (p.birth - 1.0).abs() <= SCALE_TOLERANCE
                && (p.death - 2.0_f64.sqrt()).abs() <= SCALE_TOLERANCE
        })
        .collect();
    assert_eq!(matching.len(), 1, "exactly one (1, sqrt 2) loop pair");
    report("2 (square loop)", started, Duration::from_secs(1));
}

#[test]
fn criterion_3_circle_detection() {
    let started = Instant::now();
    let dm = pairwise_distances(&circle_cloud(20), Metric::Euclidean);
    let filtration = build_vr_filtration(&dm, 2, f64::INFINITY);
    let pairs = scale_pairs(&filtration);

    let mut loop_persistence: Vec<f64> = pairs
        .iter()
        .filter(|p| p.dim == 1)
        .map(|p| p.persistence())
        .collect();
    loop_persistence.sort_by(|a, b| b.total_cmp(a));
    assert!(!loop_persistence.is_empty(), "no dim-1 pairs found");
    let top = loop_persistence[0];
    let runner_up = loop_persistence.get(1).copied().unwrap_or(0.0);
    assert!(top.is_finite() && top > 0.0);
    assert!(
        top > CIRCLE_DOMINANCE * runner_up,
        "dominant loop {top} vs runner-up {runner_up}"
    );

    let infinite_dim0 = pairs
        .iter()
        .filter(|p| p.dim == 0 && p.is_essential())
        .count();
    assert_eq!(infinite_dim0, 1, "exactly one infinite dim-0 pair");
    report("3 (circle detection)", started, Duration::from_secs(5));
}

#[test]
fn criterion_4_oracle_equivalence() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut mismatches = 0usize;
    let mut checks = 0usize;
    for cloud_index in 0..50 {
        let cloud = random_cloud(&mut rng, 8);
        let dm = pairwise_distances(&cloud, Metric::Euclidean);
        let filtration = build_vr_filtration(&dm, 2, f64::INFINITY);
        let matrix = build_boundary_matrix(&filtration, f2()).unwrap();
        let reduction = reduce(&matrix);
        let scales = filtration.scales().len();
        for i in 0..scales {
            // one window past the end exercises the clamp
            for window in 0..=(scales - i) {
                for dim in 0..=1usize {
                    let fast =
                        persistent_betti_from_reduction(&filtration, &reduction, i, window, dim)
                            .unwrap();
                    let slow = oracle::persistent_betti(&filtration, i, window, f2(), dim).unwrap();
                    checks += 1;
                    if fast != slow {
                        mismatches += 1;
                        eprintln!(
                            "cloud {cloud_index}: beta_{dim}^({i},{window}) fast {fast} != oracle {slow}"
                        );
                    }
                }
            }
        }
    }
    assert!(checks > 1000, "suspiciously few checks ran: {checks}");
    assert_eq!(mismatches, 0, "{mismatches} of {checks} checks disagreed");
    report("4 (oracle equivalence)", started, Duration::from_secs(60));
}

fn boundary_of_boundary_is_zero(m: &BoundaryMatrix) -> bool {
    let field = m.field();
    for j in 0..m.len() {
        let mut acc: std::collections::BTreeMap<usize, u32> = Default::default();
        for &(face, coeff) in m.column(j) {
            for &(row, inner) in m.column(face) {
                let entry = acc.entry(row).or_insert(0);
                *entry = field.add(*entry, field.mul(coeff, inner));
            }
        }
        if acc.values().any(|&v| v != 0) {
            return false;
        }
    }
    true
}

fn random_filtrations_m10() -> Vec<Filtration> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    (0..100)
        .map(|_| {
            let cloud = random_cloud(&mut rng, 10);
            let dm = pairwise_distances(&cloud, Metric::Euclidean);
            build_vr_filtration(&dm, 3, f64::INFINITY)
        })
        .collect()
}

#[test]
fn criterion_5_chain_complex_law() {
    let started = Instant::now();
    let mut violations = 0usize;
    for filtration in random_filtrations_m10() {
        for p in [2u32, 3, 5] {
            let matrix = build_boundary_matrix(&filtration, PrimeField::new(p).unwrap()).unwrap();
            if !boundary_of_boundary_is_zero(&matrix) {
                violations += 1;
            }
        }
    }
    assert_eq!(violations, 0);
    report("5 (chain-complex law)", started, Duration::from_secs(60));
}

/// Betti numbers of every prefix, swept from one full reduction: a pair
/// `(b, d)` contributes to prefixes `b < q <= d`, an essential birth to all
/// prefixes past it.
fn betti_sweep(filtration: &Filtration, reduction: &ReductionResult) -> Vec<Vec<i64>> {
    let n = filtration.len();
    let top = filtration.max_dimension().map_or(0, |d| d + 1);
    let mut deltas = vec![vec![0i64; top + 1]; n + 2];
    for &(b, d) in reduction.pairs() {
        let dim = filtration.simplex(b).dimension();
        deltas[b + 1][dim] += 1;
        deltas[d + 1][dim] -= 1;
    }
    for &e in reduction.essential() {
        let dim = filtration.simplex(e).dimension();
        deltas[e + 1][dim] += 1;
    }
    let mut alive = vec![0i64; top + 1];
    (0..=n)
        .map(|q| {
            for (k, delta) in deltas[q].iter().enumerate() {
                alive[k] += delta;
            }
            alive.clone()
        })
        .collect()
}

#[test]
fn criterion_6_euler_characteristic() {
    let started = Instant::now();
    let mut violations = 0usize;
    for (index, filtration) in random_filtrations_m10().iter().enumerate() {
        for p in [2u32, 3, 5] {
            let field = PrimeField::new(p).unwrap();
            let matrix = build_boundary_matrix(filtration, field).unwrap();
            let reduction = reduce(&matrix);
            let betti_by_prefix = betti_sweep(filtration, &reduction);
            let top = filtration.max_dimension().map_or(0, |d| d + 1);
            let mut cells = vec![0i64; top + 1];
            for q in 0..=filtration.len() {
                if q > 0 {
                    cells[filtration.simplex(q - 1).dimension()] += 1;
                }
                let simplex_side: i64 = cells
                    .iter()
                    .enumerate()
                    .map(|(k, &c)| if k % 2 == 0 { c } else { -c })
                    .sum();
                let betti_side: i64 = betti_by_prefix[q]
                    .iter()
                    .enumerate()
                    .map(|(k, &b)| if k % 2 == 0 { b } else { -b })
                    .sum();
                if simplex_side != betti_side {
                    violations += 1;
                }
            }
        }
        // tie the sweep to the public operation on a sample of prefixes,
        // rebuilt uncapped so every dimension is certified
        if index % 10 == 0 {
            let stride = (filtration.len() / 8).max(1);
            for q in (0..=filtration.len()).step_by(stride) {
                let complete =
                    Filtration::from_simplices(filtration.simplices()[..q].to_vec()).unwrap();
                let top = complete.max_dimension().unwrap_or(0);
                let via_op = betti_numbers(&complete, q, f2(), top).unwrap();
                let matrix = build_boundary_matrix(filtration, f2()).unwrap();
                let via_sweep = &betti_sweep(filtration, &reduce(&matrix))[q];
                for k in 0..=top {
                    assert_eq!(
                        via_op[k] as i64, via_sweep[k],
                        "prefix {q}, dim {k}: betti_numbers vs sweep"
                    );
                }
            }
        }
    }
    assert_eq!(violations, 0);
    report(
        "6 (euler characteristic)",
        started,
        Duration::from_secs(120),
    );
}

fn circle_csv(order: &[usize]) -> String {
    let cloud = circle_cloud(20);
    order
        .iter()
        .map(|&k| {
            let p = cloud.point(k);
            format!("{:.17},{:.17}\n", p[0], p[1])
        })
        .collect()
}

fn compute_args(input: std::path::PathBuf, output: std::path::PathBuf) -> ComputeArgs {
    ComputeArgs {
        input,
        format: InputFormat::CsvPoints,
        metric: Metric::Euclidean,
        max_dim: 2,
        max_eps: None,
        field: 2,
        output,
        keep_zero: false,
        top: 5,
        dump_filtration: None,
    }
}

#[test]
fn criterion_7_determinism_and_permutation_invariance() {
    let started = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("circle.csv");
    let identity: Vec<usize> = (0..20).collect();
    std::fs::write(&input, circle_csv(&identity)).unwrap();

    // byte-identical pairs files across repeated runs
    let out_a = dir.path().join("a.json");
    let out_b = dir.path().join("b.json");
    run_compute(&compute_args(input.clone(), out_a.clone())).unwrap();
    run_compute(&compute_args(input.clone(), out_b.clone())).unwrap();
    let baseline = std::fs::read(&out_a).unwrap();
    assert_eq!(
        baseline,
        std::fs::read(&out_b).unwrap(),
        "repeated runs differ"
    );

    let triples = |bytes: &[u8]| -> Vec<(usize, f64, f64)> {
        let mut t: Vec<(usize, f64, f64)> = read_pairs(bytes)
            .unwrap()
            .iter()
            .map(|p| (p.dim, p.birth, p.death))
            .collect();
        t.sort_by(|a, b| {
            a.0.cmp(&b.0)
                .then(a.1.total_cmp(&b.1))
                .then(a.2.total_cmp(&b.2))
        });
        t
    };
    let expected = triples(&baseline);

    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for trial in 0..10 {
        let mut order: Vec<usize> = (0..20).collect();
        // Fisher-Yates with the fixed-seed stream
        for i in (1..order.len()).rev() {
            let j = rng.gen_range(0..=i);
            order.swap(i, j);
        }
        let permuted_input = dir.path().join(format!("perm{trial}.csv"));
        std::fs::write(&permuted_input, circle_csv(&order)).unwrap();
        let out = dir.path().join(format!("perm{trial}.json"));
        run_compute(&compute_args(permuted_input, out.clone())).unwrap();
        let got = triples(&std::fs::read(&out).unwrap());
        assert_eq!(expected.len(), got.len(), "trial {trial}: multiset size");
        for (e, g) in expected.iter().zip(&got) {
            assert_eq!(e.0, g.0, "trial {trial}: dimension");
            assert!(
                (e.1 - g.1).abs() <= PERMUTATION_TOLERANCE,
                "trial {trial}: birth"
            );
            let deaths_match = if e.2.is_finite() {
                (e.2 - g.2).abs() <= PERMUTATION_TOLERANCE
            } else {
                g.2.is_infinite()
            };
            assert!(deaths_match, "trial {trial}: death {} vs {}", e.2, g.2);
        }
    }
    report(
        "7 (determinism and permutation invariance)",
        started,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_8_diagram_and_barcode_integrity() {
    let started = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("square.csv");
    std::fs::write(&input, "0,0\n1,0\n1,1\n0,1\n").unwrap();
    let pairs_path = dir.path().join("square.json");
    run_compute(&compute_args(input, pairs_path.clone())).unwrap();

    let svg_path = dir.path().join("square.svg");
    betti::cli::run_plot(&betti::cli::PlotArgs {
        pairs: pairs_path.clone(),
        kind: betti::cli::PlotKind::Diagram,
        out: svg_path.clone(),
        infinity_cap: None,
    })
    .unwrap();

    let svg = std::fs::read_to_string(&svg_path).unwrap();
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let nodes: Vec<roxmltree::Node> = doc.descendants().collect();

    assert!(
        nodes
            .iter()
            .any(|n| n.attribute("class") == Some("diagonal")),
        "diagram must draw the x = y diagonal"
    );

    let dim1_points = nodes
        .iter()
        .filter(|n| n.has_tag_name("circle") && n.attribute("class") == Some("pt dim1"))
        .count();
    assert_eq!(dim1_points, 1, "exactly one dim-1 point");

    // the three (0,1) component deaths aggregate to one mark annotated "3"
    let mult3 = nodes
        .iter()
        .find(|n| n.attribute("class") == Some("mult") && n.text().map(str::trim) == Some("3"))
        .expect("multiplicity-3 annotation");
    let (tx, ty): (f64, f64) = (
        mult3.attribute("x").unwrap().parse().unwrap(),
        mult3.attribute("y").unwrap().parse().unwrap(),
    );
    let annotated_dim0 = nodes.iter().any(|n| {
        n.has_tag_name("circle") && n.attribute("class") == Some("pt dim0") && {
            let cx: f64 = n.attribute("cx").unwrap().parse().unwrap();
            let cy: f64 = n.attribute("cy").unwrap().parse().unwrap();
            (cx - tx).hypot(cy - ty) < 25.0
        }
    });
    assert!(annotated_dim0, "the 3 must sit beside a dim-0 mark");

    // pairs-file round-trip is lossless
    let bytes = std::fs::read(&pairs_path).unwrap();
    let pairs = read_pairs(bytes.as_slice()).unwrap();
    let mut rewritten = Vec::new();
    write_pairs(&pairs, &mut rewritten).unwrap();
    assert_eq!(bytes, rewritten, "round-trip must be byte-identical");

    report(
        "8 (diagram and barcode integrity)",
        started,
        Duration::from_secs(60),
    );
}

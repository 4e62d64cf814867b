use hamop::catalog::{Catalog, Payload, CATALOG_ENV};
use hamop::exterior::solve_phi;
use hamop::linalg::det_fraction_free;
use hamop::monge::MongeMetric;
use hamop::pipeline::{check_entry, run_pipeline, self_check, Verdict};
use hamop::poly::{parse_poly, Rational};
use hamop::Error;

fn catalog() -> Catalog {
    Catalog::embedded().unwrap()
}

#[test]
fn every_entry_meets_its_expectations() {
    let checks = self_check(&catalog()).unwrap();
    assert!(checks.len() >= 20);
    let failed: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
    assert!(failed.is_empty(), "{failed:#?}");
}

#[test]
fn case_subspaces_land_in_their_classes() {
    let c = catalog();
    for (id, class) in [("n3-case2", "g6"), ("n3-case3", "g3"), ("n3-case4", "g1"), ("n3-case5", "g5")] {
        let r = run_pipeline(&c.subspace(id).unwrap()).unwrap();
        assert_eq!(r.verdict, Verdict::Hamiltonian, "{id}");
        assert_eq!(r.class().as_deref(), Some(class), "{id}");
        assert_eq!(r.n, 3);
    }
    let r = run_pipeline(&c.subspace("n3-case1").unwrap()).unwrap();
    assert_eq!(r.verdict, Verdict::Degenerate);
}

#[test]
fn n5_example_rank_drops_at_alpha_zero() {
    let a = catalog().subspace("n5-example").unwrap();
    let generic = run_pipeline(&a).unwrap();
    assert_eq!((generic.king_rank, generic.phi_dim, generic.verdict), (15, 0, Verdict::NoPhi));

    let a0 = a.with_params(&[("alpha", Rational::zero())]).unwrap();
    let space = solve_phi(&a0).unwrap();
    assert_eq!((space.rank, space.dim()), (14, 1));
    assert!(space.basis[0].is_nondegenerate());
    let r = run_pipeline(&a0).unwrap();
    assert_eq!(r.king_rank, 14);
    assert_eq!(r.phi_nondegenerate, Some(true));

    for v in [1, -1, 2, 5] {
        let av = a.with_params(&[("alpha", Rational::from_int(v))]).unwrap();
        assert_eq!(solve_phi(&av).unwrap().rank, 15, "alpha = {v}");
    }
}

// The King matrix is 15 x 15. A CAS gives det = 256 alpha (alpha - 3)(alpha^2 + alpha + 2)
// with one column per phi_{bc}; the ten columns with b < c carry a factor 2 here.
// The rank also drops at alpha = 3.
#[test]
fn n5_king_determinant() {
    let a = catalog().subspace("n5-example").unwrap();
    let space = solve_phi(&a).unwrap();
    assert_eq!((space.king_matrix.rows(), space.king_matrix.cols()), (15, 15));
    let det = det_fraction_free(&space.king_matrix).unwrap();
    let expected = parse_poly("1024*256*alpha*(alpha - 3)*(alpha^2 + alpha + 2)", a.vars()).unwrap();
    assert!(det == expected || det == -&expected, "{det}");

    let a3 = a.with_params(&[("alpha", Rational::from_int(3))]).unwrap();
    let s3 = solve_phi(&a3).unwrap();
    assert_eq!((s3.rank, s3.dim()), (14, 1));
    assert!(s3.basis[0].is_nondegenerate());
}

#[test]
fn pipeline_reports_are_deterministic() {
    let c = catalog();
    for id in ["n3-case3", "n3-case4", "n5-example"] {
        let a = c.subspace(id).unwrap();
        let one = serde_json::to_string(&run_pipeline(&a).unwrap()).unwrap();
        let two = serde_json::to_string(&run_pipeline(&a).unwrap()).unwrap();
        assert_eq!(one, two, "{id}");
    }
}

#[test]
fn entries_round_trip_through_json() {
    let c = catalog();
    for e in c.entries() {
        let v = e.to_value();
        assert_eq!(v["id"], e.id.as_str());
        if let Payload::Metric(g) = &e.payload {
            assert_eq!(&MongeMetric::from_value(&v["metric"]).unwrap(), g, "{}", e.id);
        }
    }
}

#[test]
fn unknown_ids_and_wrong_kinds() {
    let c = catalog();
    assert_eq!(c.get("g7").unwrap_err(), Error::UnknownCatalogId("g7".into()));
    assert!(c.metric("n3-case1").is_err());
    assert!(c.subspace("g1").is_err());
    assert!(c.system("g1").is_err());
}

#[test]
fn directory_override() {
    let dir = std::env::temp_dir().join(format!("hamop-catalog-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("catalog");
    for f in ["metrics.json", "subspaces.json", "systems.json"] {
        std::fs::copy(src.join(f), dir.join(f)).unwrap();
    }
    let metrics = std::fs::read_to_string(dir.join("metrics.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&metrics).unwrap();
    v["entries"].as_array_mut().unwrap().push(serde_json::json!({
        "id": "extra", "note": "added locally", "metric": {"n": 1, "g": [["1"]]}
    }));
    std::fs::write(dir.join("metrics.json"), v.to_string()).unwrap();

    std::env::set_var(CATALOG_ENV, &dir);
    let loaded = Catalog::load();
    std::env::remove_var(CATALOG_ENV);
    let loaded = loaded.unwrap();
    assert_eq!(loaded.source, dir.display().to_string());
    assert_eq!(loaded.entries().len(), catalog().entries().len() + 1);
    assert!(check_entry(loaded.get("extra").unwrap()).unwrap().passed);

    std::fs::remove_file(dir.join("systems.json")).unwrap();
    assert!(matches!(Catalog::load_dir(&dir), Err(Error::Io(_))));
    std::fs::remove_dir_all(&dir).unwrap();
}

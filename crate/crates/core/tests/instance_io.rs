use fairmatch_core::model::{CarrierProfile, Expectation, ShipperProfile};
use fairmatch_core::scenarios::case_study;
use fairmatch_core::{load_instance, write_instance, write_scheme, IoError, MatchingInstance, MatchingProblem, Matrix, SatisfactionOptions};

fn small() -> MatchingInstance {
    let alpha = Matrix::from_rows(vec![vec![0.6, 0.2], vec![0.1, 0.9]]).unwrap();
    let beta = Matrix::from_rows(vec![vec![0.5, 0.4], vec![0.3, 0.8]]).unwrap();
    MatchingInstance::from_matrices(alpha, beta, 0.2, [0.75, 1.0]).unwrap()
}

#[test]
fn case_study_round_trips_through_disk() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("case.json");
    let inst = case_study();
    write_instance(&inst, &path).unwrap();
    assert_eq!(load_instance(&path).unwrap(), inst);
}

#[test]
fn unknown_fields_are_rejected() {
    let mut value: serde_json::Value = serde_json::from_str(&small().to_json()).unwrap();
    value["shippers"][0]["colour"] = serde_json::json!("red");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, value.to_string()).unwrap();
    assert!(matches!(load_instance(&path), Err(IoError::Schema { .. })));
}

#[test]
fn invalid_instances_name_the_field() {
    let mut inst = small();
    inst.gamma = 1.5;
    assert_eq!(inst.validate().unwrap_err().field, "gamma");

    let mut inst = small();
    inst.eta_interval = [1.2, 1.0];
    assert_eq!(inst.validate().unwrap_err().field, "eta_interval");

    let mut inst = small();
    inst.shippers[1].theta = Some(0.0);
    assert_eq!(inst.validate().unwrap_err().field, "shippers[2].theta");

    let mut inst = small();
    inst.weights.carrier[3] = 0.5;
    assert!(inst.validate().unwrap_err().field.starts_with("weights.carrier"));

    let mut inst = small();
    inst.satisfaction_beta = Some(Matrix::zeros(3, 2));
    assert_eq!(inst.validate().unwrap_err().field, "satisfaction_beta");
}

#[test]
fn missing_file_is_a_read_error() {
    assert!(matches!(load_instance("/nonexistent/instance.json"), Err(IoError::Read { .. })));
}

#[test]
fn raw_profiles_aggregate_and_screen() {
    let mut weights = [0.0; 9];
    weights[2] = 1.0;
    let shipper = |vehicle: &str, load: f64| ShipperProfile {
        vehicle_type: Some(Expectation::intolerable(vehicle.to_string())),
        cargo_weight: Some(load),
        departure: Some("A".into()),
        phi: Some(0.5),
        ..Default::default()
    };
    let carrier = |vehicle: &str, capacity: f64| CarrierProfile {
        vehicle_type: Some(vehicle.to_string()),
        deadweight: Some(capacity),
        departure: Some("A".into()),
        price: None,
        ..Default::default()
    };
    let mut inst = small();
    inst.satisfaction_alpha = None;
    inst.satisfaction_beta = None;
    inst.shippers = vec![shipper("van", 2.0), shipper("truck", 9.0)];
    inst.carriers = vec![carrier("van", 5.0), carrier("truck", 5.0), carrier("truck", 10.0)];
    inst.weights.shipper = weights;
    let mut carrier_weights = [0.0; 9];
    carrier_weights[8] = 1.0;
    inst.weights.carrier = carrier_weights;
    inst.reliability_carrier = Some(vec![
        vec![fairmatch_core::model::ReliabilityEntry::Score(0.5); 2];
        3
    ]);
    inst.validate().unwrap();
    let p = MatchingProblem::from_instance(&inst, SatisfactionOptions::default()).unwrap();
    assert_eq!(p.alpha().row(0), &[1.0, -1e6, -1e6]);
    // Shipper 2's cargo only fits the large truck; shipper 1 only accepts vans.
    let mask = p.feasible();
    assert!(mask.get(0, 0) && !mask.get(0, 1) && !mask.get(0, 2));
    assert!(!mask.get(1, 0) && !mask.get(1, 1) && mask.get(1, 2));
    let best = p.solve_assignment(1.0, 0.0, None).unwrap();
    assert_eq!(best.pairs, vec![(0, 0), (1, 2)]);
}

#[test]
fn scheme_report_is_one_based_json() {
    let p = MatchingProblem::from_instance(&small(), SatisfactionOptions::default()).unwrap();
    let bounds = p.bounds(0.2).unwrap();
    let scheme = p.solve_lp3(&bounds).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scheme.json");
    write_scheme(&scheme, &path).unwrap();
    let value: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(value["pairs"], serde_json::json!([[1, 1], [2, 2]]));
}

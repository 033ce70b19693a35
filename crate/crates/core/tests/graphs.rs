use cascade_clock::experiments::GraphSpec;
use cascade_clock::Graph;

fn within_three_se(observed: &[f64], expected: f64) -> (bool, f64) {
    let n = observed.len() as f64;
    let mean = observed.iter().sum::<f64>() / n;
    let sd = (observed.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
    let z = (mean - expected) / (sd / n.sqrt());
    (z.abs() <= 3.0, z)
}

#[test]
fn er_edge_count_matches_binomial_mean() {
    let n = 3000usize;
    let p = (n as f64).powf(-1.0 / 3.0);
    let counts: Vec<f64> = (0..50)
        .map(|seed| Graph::generate_er(n, p, seed).unwrap().edge_count() as f64)
        .collect();
    let expected = p * (n * (n - 1) / 2) as f64;
    let (ok, z) = within_three_se(&counts, expected);
    assert!(ok, "z = {z}");
}

#[test]
fn sbm_inter_block_edges_match_expectation() {
    let spec = GraphSpec::Sbm { n: 5000, block_sizes: None, p_intra: 0.2, p_inter: 0.01 };
    assert_eq!(spec.block_sizes().unwrap(), vec![71, 4929]);
    let mut inter = Vec::new();
    let mut intra_small = Vec::new();
    for seed in 0..50 {
        let g = spec.build(seed).unwrap();
        let (mut across, mut small) = (0usize, 0usize);
        for (u, v) in g.edges() {
            match (u < 71, v < 71) {
                (true, true) => small += 1,
                (true, false) | (false, true) => across += 1,
                _ => {}
            }
        }
        inter.push(across as f64);
        intra_small.push(small as f64);
    }
    let (ok, z) = within_three_se(&inter, 71.0 * 4929.0 * 0.01);
    assert!(ok, "inter-block z = {z}");
    let (ok, z) = within_three_se(&intra_small, 0.2 * (71 * 70 / 2) as f64);
    assert!(ok, "small-block z = {z}");
}

#[test]
fn er_degree_distribution_is_binomial() {
    let n = 2000;
    let p = 0.01;
    let g = Graph::generate_er(n, p, 17).unwrap();
    let degrees: Vec<f64> = (0..n).map(|v| g.degree(v) as f64).collect();
    let mean = degrees.iter().sum::<f64>() / n as f64;
    let var = degrees.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let expected_var = (n - 1) as f64 * p * (1.0 - p);
    assert!((mean - (n - 1) as f64 * p).abs() < 0.5, "mean degree {mean}");
    assert!((var / expected_var - 1.0).abs() < 0.15, "degree variance {var} vs {expected_var}");
}

#[test]
fn generation_is_reproducible_and_seed_sensitive() {
    let a = Graph::generate_er(500, 0.05, 9).unwrap();
    let b = Graph::generate_er(500, 0.05, 9).unwrap();
    let c = Graph::generate_er(500, 0.05, 10).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
    let s1 = Graph::generate_sbm(&[30, 70], 0.3, 0.02, 4).unwrap();
    let s2 = Graph::generate_sbm(&[30, 70], 0.3, 0.02, 4).unwrap();
    assert_eq!(s1, s2);
}

#[test]
fn extreme_probabilities() {
    let empty = Graph::generate_er(40, 0.0, 1).unwrap();
    assert_eq!(empty.edge_count(), 0);
    let full = Graph::generate_er(40, 1.0, 1).unwrap();
    assert_eq!(full.edge_count(), 40 * 39 / 2);
    let split = Graph::generate_sbm(&[5, 7], 1.0, 0.0, 1).unwrap();
    assert_eq!(split.edge_count(), 10 + 21);
    assert!(Graph::generate_er(10, 1.5, 0).is_err());
    assert!(Graph::generate_sbm(&[3, 0], 0.5, 0.5, 0).is_err());
}

#[test]
fn edge_list_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    let g = Graph::generate_sbm(&[20, 30], 0.3, 0.05, 2).unwrap();
    g.save(&path).unwrap();
    assert_eq!(Graph::load(&path).unwrap(), g);
}

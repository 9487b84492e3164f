use bcgraded::verify::SuiteId;

/// Rows of the suite table in the README, as `(name, summary)`.
fn readme_suites() -> Vec<(String, String)> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../README.md");
    let text = std::fs::read_to_string(path).expect("README.md at the workspace root");
    text.lines()
        .filter_map(|l| {
            let cells: Vec<&str> = l.trim().strip_prefix('|')?.strip_suffix('|')?.split('|').map(str::trim).collect();
            match cells.as_slice() {
                [name, summary] if name.starts_with('`') => Some((name.trim_matches('`').to_string(), summary.to_string())),
                _ => None,
            }
        })
        .collect()
}

#[test]
fn readme_lists_every_suite() {
    let rows = readme_suites();
    let expected: Vec<(String, String)> =
        SuiteId::ALL.iter().map(|id| (id.name().to_string(), id.summary().to_string())).collect();
    assert_eq!(rows, expected);
}

use ns_core::report::{Format, Table};

#[test]
fn empty_table_renders_in_every_format() {
    let t = Table::new("Spectra", &["Orbit", "Size", "Spectrum"]);
    let text = t.render(Format::Table).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.contains("Orbit  Size  Spectrum"));
    let md = t.render(Format::Markdown).unwrap();
    assert!(md.contains("| Orbit | Size | Spectrum |\n|---|---|---|\n"));
    assert_eq!(t.render(Format::Csv).unwrap(), "Orbit,Size,Spectrum\n");
    let v: serde_json::Value = serde_json::from_str(&t.render(Format::Json).unwrap()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["rows"].as_array().unwrap().len(), 0);
}

#[test]
fn cells_with_separators_are_escaped() {
    let mut t = Table::new("x", &["a", "b"]);
    t.push(vec!["p|q".into(), "1, 2".into()]);
    assert!(t.render(Format::Markdown).unwrap().contains("| p\\|q | 1, 2 |"));
    assert!(t.render(Format::Csv).unwrap().contains("p|q,\"1, 2\""));
}

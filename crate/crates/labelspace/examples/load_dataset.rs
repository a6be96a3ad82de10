//! Load a MULAN-style dataset pair: ARFF train/test splits plus the XML
//! label header.
//!
//! ```bash
//! cargo run -p labelspace --example load_dataset
//! ```

use labelspace::dataset::{load_pair, parse_arff, parse_label_header, to_dense_arff};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // The XML header names the label attributes; everything else is a feature.
    let header = r#"<labels xmlns="http://mulan.sourceforge.net/labels">
  <label name="beach"></label>
  <label name="urban"></label>
</labels>"#;
    let label_names = parse_label_header(header)?;
    println!("labels: {label_names:?}");

    // Dense and sparse rows may be mixed; sparse entries default to 0.
    let arff = "\
@relation demo
@attribute brightness numeric
@attribute setting {indoor,outdoor}
@attribute beach {0,1}
@attribute urban {0,1}
@data
0.82,outdoor,1,0
0.35,indoor,0,1
{0 0.61, 1 outdoor, 3 1}
";
    let dataset = parse_arff(arff, &label_names)?;
    println!(
        "parsed {} instances, {} features, {} labels",
        dataset.num_instances(),
        dataset.num_features(),
        dataset.num_labels()
    );
    for i in 0..dataset.num_instances() {
        println!(
            "  features {:?} -> labels {:?}",
            dataset.features[i],
            dataset.labels.active_labels(i)
        );
    }

    // Round-trip through the dense serializer.
    let round = parse_arff(&to_dense_arff(&dataset, "demo"), &label_names)?;
    println!("dense round-trip identical: {}", round == dataset);

    // File-level loading enforces train/test schema equality.
    let dir = tempfile::tempdir()?;
    let train_path = dir.path().join("demo-train.arff");
    let test_path = dir.path().join("demo-test.arff");
    let xml_path = dir.path().join("demo.xml");
    std::fs::write(&train_path, arff)?;
    std::fs::write(&test_path, arff)?;
    std::fs::write(&xml_path, header)?;
    let pair = load_pair(&train_path, &test_path, &xml_path)?;
    println!(
        "loaded pair: {} train / {} test instances",
        pair.train.num_instances(),
        pair.test.num_instances()
    );

    // A missing attribute on one side is a schema mismatch, not a silent skew.
    std::fs::write(
        &test_path,
        "@relation demo\n@attribute brightness numeric\n@attribute beach {0,1}\n@attribute urban {0,1}\n@data\n0.5,1,0\n",
    )?;
    match load_pair(&train_path, &test_path, &xml_path) {
        Err(err) => println!("schema mismatch detected as expected:\n  {err}"),
        Ok(_) => println!("unexpected: mismatched pair loaded"),
    }
    Ok(())
}

use genfit::data::{dataset, dataset_names, dataset_text, parse_values};
use sha2::{Digest, Sha256};

#[test]
fn bundled_files_are_unchanged() {
    let pins = [
        ("bearing", "31d699b9b8fcbdd699f7d66dcc39786487ccf8dfdd6cdab2f7ad59382c1c1f63"),
        ("earthquake", "a8e3efd56581b40746f50b6a03a80143a13ef57d1fc19b17a36c6b35620fbf86"),
        ("pollution", "a626b1e6bc332d02d54f926e5bf51b301acfc97d3889c7cf712ab39ad1e1899b"),
    ];
    for (name, want) in pins {
        let digest = Sha256::digest(dataset_text(name).unwrap().as_bytes());
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        assert_eq!(hex, want, "{name}");
    }
    assert_eq!(dataset_names().count(), 3);
}

#[test]
fn bearing_values() {
    let d = dataset("bearing").unwrap();
    assert_eq!(
        d.values,
        [152.7, 172.0, 172.5, 173.3, 193.0, 204.7, 216.5, 234.9, 262.6, 422.6]
    );
}

#[test]
fn earthquake_has_ties() {
    let mut v = dataset("earthquake").unwrap().values;
    assert_eq!(v.len(), 182);
    v.sort_by(f64::total_cmp);
    assert!(v.windows(2).any(|w| w[0] == w[1]));
    assert_eq!(v.iter().filter(|&&x| x == 8.5).count(), 2);
}

#[test]
fn parser_rejects_garbage() {
    assert!(parse_values("1.0, 2.0\n3 x\n").is_err());
    assert!(dataset("nope").is_err());
    assert_eq!(parse_values("value\n1\n2.5e1, 3\n").unwrap(), [1.0, 25.0, 3.0]);
}

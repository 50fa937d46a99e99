use std::path::PathBuf;

fn main() {
    let crate_dir = PathBuf::from(std::env::var("CARGO_MANIFEST_DIR").unwrap());
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
    let config =
        cbindgen::Config::from_file(crate_dir.join("cbindgen.toml")).expect("cbindgen.toml");
    let bindings = cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(config)
        .generate()
        .expect("header generation");
    let header = crate_dir.join("include").join("vacuum.h");
    std::fs::create_dir_all(header.parent().unwrap()).unwrap();
    // Rewrite only on change so the checked-in header keeps its mtime.
    let mut bytes = Vec::new();
    bindings.write(&mut bytes);
    if std::fs::read(&header).ok().as_deref() != Some(bytes.as_slice()) {
        std::fs::write(&header, bytes).unwrap();
    }
}

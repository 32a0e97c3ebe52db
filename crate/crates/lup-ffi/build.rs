use std::env;
use std::path::PathBuf;

fn main() {
    let crate_dir = env::var("CARGO_MANIFEST_DIR").expect("CARGO_MANIFEST_DIR is set by cargo");
    let config = cbindgen::Config::from_file(PathBuf::from(&crate_dir).join("cbindgen.toml"))
        .expect("reading cbindgen.toml");

    match cbindgen::Builder::new()
        .with_config(config)
        .with_crate(&crate_dir)
        .generate()
    {
        Ok(bindings) => {
            bindings.write_to_file(PathBuf::from(&crate_dir).join("include").join("lup.h"));
        }
        // Keep `cargo build` usable while the crate itself fails to parse;
        // rustc will report the real error.
        Err(cbindgen::Error::ParseSyntaxError { .. }) => {}
        Err(err) => panic!("generating C header: {err}"),
    }

    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
}

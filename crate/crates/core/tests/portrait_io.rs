use std::f64::consts::PI;

use num_complex::Complex64;
use pwedge::complexfn::kappa;
use pwedge::portraits::{
    read_ppm, render, rgb_to_hue, write_image, write_image_with, Format, Shading, Window,
};
use pwedge::Error;

fn window() -> Window {
    Window::new(-2.0, 2.0, -1.5, 1.5)
}

#[test]
fn constant_16x16_file_size() {
    // "P6\n16 16\n255\n" is 13 bytes
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.ppm");
    let r = render(|_| Ok(Complex64::new(2.0, 0.0)), window(), 16, 16).unwrap();
    write_image(&r, &path, Format::Ppm).unwrap();
    let bytes = std::fs::read(&path).unwrap();
    assert_eq!(&bytes[..13], b"P6\n16 16\n255\n");
    assert_eq!(bytes.len(), 13 + 3 * 256);
    // phase 0 is hue 1/2: cyan
    assert!(bytes[13..].chunks(3).all(|p| p == [0, 255, 255]));
}

#[test]
fn written_hue_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z.ppm");
    let r = render(|z| Ok(z * z - 0.5), window(), 40, 30).unwrap();
    write_image(&r, &path, Format::Ppm).unwrap();
    let (w, h, rgb) = read_ppm(&path).unwrap();
    assert_eq!((w, h), (40, 30));
    for (i, px) in rgb.chunks(3).enumerate() {
        let hue = (r.phase[i] + PI) / (2.0 * PI);
        let back = rgb_to_hue([px[0], px[1], px[2]]);
        let d = (back - hue).abs();
        assert!(d.min(1.0 - d) <= 1.0 / 255.0, "pixel {i}: {hue} vs {back}");
    }
}

#[test]
fn failure_pixels_are_black_on_disk() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.ppm");
    let r = render(
        |z| if z.im > 0.0 { Err(Error::Domain("upper".into())) } else { Ok(z) },
        window(),
        16,
        16,
    )
    .unwrap();
    write_image(&r, &path, Format::Ppm).unwrap();
    let (_, _, rgb) = read_ppm(&path).unwrap();
    assert!(rgb[..3 * 16 * 8].iter().all(|&b| b == 0));
    assert!(rgb[3 * 16 * 8..].chunks(3).all(|p| p != [0, 0, 0]));
}

#[test]
fn rendering_is_bit_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let k = Complex64::new(3.0, 1.0);
    let f = |z| Ok(kappa(k, z));
    let w = Window::new(-5.0, 5.0, -5.0, 5.0);
    let a = dir.path().join("a.ppm");
    let b = dir.path().join("b.ppm");
    write_image(&render(f, w, 77, 51).unwrap(), &a, Format::Ppm).unwrap();
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let r = single.install(|| render(f, w, 77, 51).unwrap());
    write_image(&r, &b, Format::Ppm).unwrap();
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn png_decodes_to_the_same_pixels() {
    let dir = tempfile::tempdir().unwrap();
    let r = render(|z| Ok(z.exp()), window(), 24, 20).unwrap();
    let ppm = dir.path().join("e.ppm");
    let png_path = dir.path().join("e.png");
    write_image(&r, &ppm, Format::Ppm).unwrap();
    write_image(&r, &png_path, Format::Png).unwrap();
    let decoder = png::Decoder::new(std::io::BufReader::new(std::fs::File::open(&png_path).unwrap()));
    let mut reader = decoder.read_info().unwrap();
    let mut buf = vec![0; reader.output_buffer_size().unwrap()];
    let info = reader.next_frame(&mut buf).unwrap();
    assert_eq!((info.width, info.height), (24, 20));
    assert_eq!(&buf[..info.buffer_size()], &read_ppm(&ppm).unwrap().2[..]);
}

#[test]
fn modulus_shading_only_darkens() {
    let dir = tempfile::tempdir().unwrap();
    let r = render(|z| Ok(z * 3.0), window(), 16, 16).unwrap();
    let plain = dir.path().join("p.ppm");
    let shaded = dir.path().join("s.ppm");
    write_image(&r, &plain, Format::Ppm).unwrap();
    write_image_with(&r, &shaded, Format::Ppm, Shading::Modulus).unwrap();
    let (_, _, a) = read_ppm(&plain).unwrap();
    let (_, _, b) = read_ppm(&shaded).unwrap();
    assert!(a.iter().zip(&b).all(|(x, y)| y <= x));
    assert_ne!(a, b);
}

#[test]
fn io_errors_name_the_path() {
    let r = render(Ok, window(), 16, 16).unwrap();
    let path = std::path::Path::new("/nonexistent-dir/x.ppm");
    match write_image(&r, path, Format::Ppm) {
        Err(Error::Io { path: p, .. }) => assert!(p.contains("nonexistent-dir")),
        other => panic!("expected an i/o error, got {other:?}"),
    }
}

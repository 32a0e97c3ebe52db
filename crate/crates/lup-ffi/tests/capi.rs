//! Drives the C ABI the way a foreign caller would: through raw pointers,
//! status codes, and the explicit free functions.

use std::ffi::{CStr, CString};
use std::ptr;

use lup::algorithms::{self, AlgorithmId};
use lup::compress::{compress, CompressorAlg};
use lup::list::CostModel;
use lup::offline::lookahead_strategy;
use lup::seqfile::NamedSequence;
use lup_ffi::*;

fn make(text: &str) -> *mut LupSequence {
    let text = CString::new(text).unwrap();
    let mut seq = ptr::null_mut();
    let status = unsafe { lup_sequence_parse(text.as_ptr(), &mut seq) };
    assert_eq!(status, LupStatus::Ok);
    assert!(!seq.is_null());
    seq
}

fn make_family(family: &str) -> *mut LupSequence {
    let family = CString::new(family).unwrap();
    let mut seq = ptr::null_mut();
    let status = unsafe { lup_sequence_from_family(family.as_ptr(), &mut seq) };
    assert_eq!(status, LupStatus::Ok);
    assert!(!seq.is_null());
    seq
}

fn last_error() -> Option<String> {
    let ptr = lup_last_error_message();
    if ptr.is_null() {
        return None;
    }
    Some(unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_owned())
}

#[test]
fn parse_inspect_render_round_trip() {
    let seq = make("#list: x y\nx y y x");
    unsafe {
        assert_eq!(lup_sequence_items(seq), 2);
        assert_eq!(lup_sequence_requests(seq), 4);

        let mut rendered = ptr::null_mut();
        assert_eq!(lup_sequence_render(seq, &mut rendered), LupStatus::Ok);
        let text = CStr::from_ptr(rendered).to_str().unwrap().to_owned();
        lup_string_free(rendered);
        assert_eq!(text, NamedSequence::parse("#list: x y\nx y y x").unwrap().render());

        lup_sequence_free(seq);
    }
}

#[test]
fn family_generation_and_online_runs() {
    let seq = make_family("alpha:10");
    let reference = lup::generators::FamilySpec::parse_compact("alpha:10")
        .unwrap()
        .generate()
        .unwrap();
    unsafe {
        assert_eq!(lup_sequence_items(seq), 2);
        assert_eq!(lup_sequence_requests(seq), reference.seq().n());

        let mtfo = CString::new("mtfo").unwrap();
        let mut cost = LupCost { access: 0, paid_exchanges: 0 };
        let status = lup_run(seq, mtfo.as_ptr(), LupCostModel::Partial, &mut cost);
        assert_eq!(status, LupStatus::Ok);
        assert_eq!(cost.access + cost.paid_exchanges, 40);
        let direct = algorithms::run(
            &AlgorithmId::parse("mtfo").unwrap(),
            reference.seq(),
            CostModel::Partial,
        )
        .unwrap();
        assert_eq!(cost.access, direct.access);
        assert_eq!(cost.paid_exchanges, direct.paid_exchanges);

        let ts = CString::new("ts").unwrap();
        let status = lup_run(seq, ts.as_ptr(), LupCostModel::Partial, &mut cost);
        assert_eq!(status, LupStatus::Ok);
        assert_eq!(cost.access + cost.paid_exchanges, 20);

        // All-ones initial bits make the two-bit algorithm coincide with
        // the odd-start variant.
        let explicit = CString::new("mtf2:11").unwrap();
        let mut explicit_cost = LupCost { access: 0, paid_exchanges: 0 };
        let status = lup_run(seq, explicit.as_ptr(), LupCostModel::Partial, &mut explicit_cost);
        assert_eq!(status, LupStatus::Ok);
        assert_eq!(explicit_cost.access + explicit_cost.paid_exchanges, 40);

        lup_sequence_free(seq);
    }
}

#[test]
fn exact_optimum_and_capacity_guard() {
    let seq = make("#list: x y\ny y y x x");
    unsafe {
        let mut cost = 0u64;
        assert_eq!(lup_opt_cost(seq, LupCostModel::Full, 0, &mut cost), LupStatus::Ok);
        assert_eq!(cost, 7);
        lup_sequence_free(seq);
    }

    let wide = make_family("random:7,4,1");
    unsafe {
        let mut cost = 0u64;
        let status = lup_opt_cost(wide, LupCostModel::Full, 0, &mut cost);
        assert_eq!(status, LupStatus::Capacity);
        let message = last_error().expect("capacity failure leaves a message");
        assert!(message.contains("exceeds the limit"), "unexpected message: {message}");
        lup_sequence_free(wide);
    }
}

#[test]
fn pair_optimum_requires_two_items() {
    let pair = make_family("alpha:10");
    unsafe {
        let mut cost = 0u64;
        assert_eq!(lup_pair_opt_cost(pair, LupCostModel::Partial, &mut cost), LupStatus::Ok);
        assert_eq!(cost, 20);
        lup_sequence_free(pair);
    }

    let wide = make_family("gamma:3,1");
    unsafe {
        let mut cost = 0u64;
        let status = lup_pair_opt_cost(wide, LupCostModel::Partial, &mut cost);
        assert_eq!(status, LupStatus::Domain);
        let message = last_error().expect("domain failure leaves a message");
        assert!(message.contains("two items"), "unexpected message: {message}");
        lup_sequence_free(wide);
    }
}

#[test]
fn strategy_cost_matches_library() {
    let seq = make_family("beta2:5");
    let reference = lup::generators::FamilySpec::parse_compact("beta2:5")
        .unwrap()
        .generate()
        .unwrap();
    let direct = lookahead_strategy(reference.seq(), CostModel::Partial).unwrap();
    unsafe {
        let mut cost = LupCost { access: 0, paid_exchanges: 0 };
        let status = lup_strategy_cost(seq, LupCostModel::Partial, &mut cost);
        assert_eq!(status, LupStatus::Ok);
        assert_eq!(cost.access, direct.access);
        assert_eq!(cost.paid_exchanges, direct.paid_exchanges);
        assert!(cost.access + cost.paid_exchanges > 0);
        lup_sequence_free(seq);
    }
}

#[test]
fn advice_bound_values_and_domain() {
    unsafe {
        let mut bound = 0.0f64;
        assert_eq!(lup_advice_lower_bound(1.01, 1, &mut bound), LupStatus::Ok);
        assert!((bound - 0.126815).abs() < 1e-6, "bound was {bound}");

        assert_eq!(lup_advice_lower_bound(0.5, 1, &mut bound), LupStatus::Domain);
        assert_eq!(lup_advice_lower_bound(2.0, 1, &mut bound), LupStatus::Domain);
        let message = last_error().expect("domain failure leaves a message");
        assert!(message.contains("out of range"), "unexpected message: {message}");
    }
}

#[test]
fn compress_round_trip_matches_library() {
    let text = b"abracadabra";
    let reference = compress(text, CompressorAlg::parse("best3").unwrap()).unwrap();
    let alg = CString::new("best3").unwrap();
    unsafe {
        let mut data = ptr::null_mut();
        let mut len = 0usize;
        let mut payload_bits = 0u64;
        let status = lup_compress(
            text.as_ptr(),
            text.len(),
            alg.as_ptr(),
            &mut data,
            &mut len,
            &mut payload_bits,
        );
        assert_eq!(status, LupStatus::Ok);
        assert_eq!(payload_bits, reference.payload_bits);
        let stream = std::slice::from_raw_parts(data, len).to_vec();
        assert_eq!(stream, reference.bytes);

        let mut recovered = ptr::null_mut();
        let mut recovered_len = 0usize;
        let status = lup_decompress(data, len, &mut recovered, &mut recovered_len);
        assert_eq!(status, LupStatus::Ok);
        assert_eq!(std::slice::from_raw_parts(recovered, recovered_len), text);

        lup_buffer_free(data, len);
        lup_buffer_free(recovered, recovered_len);
    }
}

#[test]
fn null_and_bad_arguments() {
    let text = CString::new("#list: x y\nx").unwrap();
    unsafe {
        let mut seq = ptr::null_mut();
        assert_eq!(lup_sequence_parse(ptr::null(), &mut seq), LupStatus::NullArgument);
        assert_eq!(lup_sequence_parse(text.as_ptr(), ptr::null_mut()), LupStatus::NullArgument);

        let bad_utf8: [u8; 2] = [0xff, 0x00];
        let status = lup_sequence_parse(bad_utf8.as_ptr().cast(), &mut seq);
        assert_eq!(status, LupStatus::InvalidUtf8);

        assert_eq!(lup_sequence_items(ptr::null()), 0);
        assert_eq!(lup_sequence_requests(ptr::null()), 0);

        let mut cost = LupCost { access: 0, paid_exchanges: 0 };
        let alg = CString::new("zigzag").unwrap();
        let live = make("#list: x y\nx");
        assert_eq!(lup_run(live, alg.as_ptr(), LupCostModel::Full, &mut cost), LupStatus::Parse);
        let message = last_error().expect("parse failure leaves a message");
        assert!(message.contains("unknown algorithm"), "unexpected message: {message}");
        assert_eq!(
            lup_run(ptr::null(), alg.as_ptr(), LupCostModel::Full, &mut cost),
            LupStatus::NullArgument
        );
        lup_sequence_free(live);

        let garbage = [0u8, 1, 2];
        let mut data = ptr::null_mut();
        let mut len = 0usize;
        let status = lup_decompress(garbage.as_ptr(), garbage.len(), &mut data, &mut len);
        assert_eq!(status, LupStatus::Format);

        // Freeing null handles, buffers, and strings is a documented no-op.
        lup_sequence_free(ptr::null_mut());
        lup_buffer_free(ptr::null_mut(), 0);
        lup_string_free(ptr::null_mut());
    }
}

#[test]
fn last_error_clears_on_success() {
    unsafe {
        let mut bound = 0.0f64;
        assert_eq!(lup_advice_lower_bound(0.5, 1, &mut bound), LupStatus::Domain);
        assert!(last_error().is_some());
        assert_eq!(lup_advice_lower_bound(1.01, 1, &mut bound), LupStatus::Ok);
        assert!(last_error().is_none());
    }
}

//! C ABI for the kernel: opaque handles, status codes, JSON in and out.
//!
//! Objects and maps cross the boundary as the canonical JSON documents or as
//! opaque handles. Every fallible call either returns a handle (null on
//! failure) or a `TsStatus`; the message of the most recent failure on the
//! current thread is available through [`ts_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use tstrat_core::io::{
    category_from_doc, map_from_doc, map_to_doc, parse_json, strat_from_doc, strat_to_doc, to_json,
};
use tstrat_core::lifting::{is_n_complicial, verify_pp_lemma, PPLemma};
use tstrat_core::nerve::nerve_rs;
use tstrat_core::scomplex::standard;
use tstrat_core::shapes::{
    complicial_horn, complicial_simplex, delta3_eq, saturation_pair, CVariant,
};
use tstrat_core::strat::{
    classify_mono, delta, delta_t, join_strat, product_strat, pushout, pushout_strat, reflector,
    MonoClass, Prestrat, StratMap,
};
use tstrat_core::tdelta::validate_presentation;

/// An opaque prestratified simplicial set.
pub struct TsObject(Prestrat);

/// An opaque morphism together with its endpoints.
pub struct TsMap {
    src: Prestrat,
    dst: Prestrat,
    map: StratMap,
}

/// Status codes mirroring the CLI exit contract.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TsStatus {
    Pass = 0,
    Fail = 1,
    Indeterminate = 2,
    InputError = 3,
}

/// Classification of a morphism.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TsMonoClass {
    NotMono = 0,
    Entire = 1,
    Regular = 2,
    PlainMono = 3,
}

/// Marking variants of the complicial simplex.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TsVariant {
    Plain = 0,
    Prime = 1,
    DoublePrime = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| {
        *e.borrow_mut() = CString::new(msg.replace('\0', "?")).unwrap();
    });
}

fn catch_object(r: tstrat_core::Result<Prestrat>) -> *mut TsObject {
    match r {
        Ok(x) => Box::into_raw(Box::new(TsObject(x))),
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    }
}

unsafe fn cstr<'a>(s: *const c_char) -> Result<&'a str, ()> {
    if s.is_null() {
        set_error("null string".into());
        return Err(());
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("invalid utf-8".into());
    })
}

fn export_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', "?")).unwrap().into_raw()
}

/// Message of the most recent failure on this thread. Borrowed; do not free.
#[no_mangle]
pub extern "C" fn ts_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Frees a string returned by any `*_to_json` or report-producing call.
///
/// # Safety
/// `s` must come from this library and not have been freed before.
#[no_mangle]
pub unsafe extern "C" fn ts_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an object document.
///
/// # Safety
/// `json` must be a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ts_object_parse(json: *const c_char) -> *mut TsObject {
    let Ok(text) = cstr(json) else {
        return ptr::null_mut();
    };
    catch_object(parse_json(text).and_then(|doc| strat_from_doc(&doc)))
}

/// Serializes an object to its canonical document.
///
/// # Safety
/// `h` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn ts_object_to_json(h: *const TsObject) -> *mut c_char {
    export_string(to_json(&strat_to_doc(&(*h).0)))
}

/// # Safety
/// `h` must be a live handle; it is consumed.
#[no_mangle]
pub unsafe extern "C" fn ts_object_free(h: *mut TsObject) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_object_dim(h: *const TsObject) -> usize {
    (*h).0.dim()
}

/// # Safety
/// `h` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_object_is_stratified(h: *const TsObject) -> bool {
    (*h).0.is_stratified()
}

/// Number of marked non-degenerate simplices.
///
/// # Safety
/// `h` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_object_marked_count(h: *const TsObject) -> usize {
    (*h).0.marked_nondegenerate_count()
}

#[no_mangle]
pub extern "C" fn ts_shape_delta(m: usize) -> *mut TsObject {
    catch_object(Ok(delta(m)))
}

#[no_mangle]
pub extern "C" fn ts_shape_delta_t(m: usize) -> *mut TsObject {
    catch_object(delta_t(m))
}

#[no_mangle]
pub extern "C" fn ts_shape_sharp(m: usize) -> *mut TsObject {
    catch_object(Ok(Prestrat::sharp(standard(m))))
}

#[no_mangle]
pub extern "C" fn ts_shape_delta3_eq() -> *mut TsObject {
    catch_object(Ok(delta3_eq()))
}

#[no_mangle]
pub extern "C" fn ts_shape_csimplex(k: usize, m: usize, variant: TsVariant) -> *mut TsObject {
    let v = match variant {
        TsVariant::Plain => CVariant::Plain,
        TsVariant::Prime => CVariant::Prime,
        TsVariant::DoublePrime => CVariant::DoublePrime,
    };
    catch_object(complicial_simplex(k, m, v))
}

fn catch_map(r: tstrat_core::Result<(Prestrat, Prestrat, StratMap)>) -> *mut TsMap {
    match r {
        Ok((src, dst, map)) => Box::into_raw(Box::new(TsMap { src, dst, map })),
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    }
}

/// The horn inclusion Λ^k[m] -> Δ^k[m].
#[no_mangle]
pub extern "C" fn ts_shape_horn(k: usize, m: usize) -> *mut TsMap {
    catch_map(complicial_horn(k, m))
}

/// The saturation extension at index `l >= -1`.
#[no_mangle]
pub extern "C" fn ts_shape_saturation(l: isize) -> *mut TsMap {
    catch_map(saturation_pair(l).map(|p| (p.source, p.target, p.map)))
}

/// Parses a map document.
///
/// # Safety
/// `json` must be a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ts_map_parse(json: *const c_char) -> *mut TsMap {
    let Ok(text) = cstr(json) else {
        return ptr::null_mut();
    };
    catch_map(parse_json(text).and_then(|doc| map_from_doc(&doc)))
}

/// # Safety
/// `h` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_map_to_json(h: *const TsMap) -> *mut c_char {
    let m = &*h;
    export_string(to_json(&map_to_doc(&m.src, &m.dst, &m.map)))
}

/// # Safety
/// `h` must be a live handle; it is consumed.
#[no_mangle]
pub unsafe extern "C" fn ts_map_free(h: *mut TsMap) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_map_classify(h: *const TsMap) -> TsMonoClass {
    let m = &*h;
    match classify_mono(&m.map, &m.src, &m.dst) {
        MonoClass::NotMono => TsMonoClass::NotMono,
        MonoClass::Entire => TsMonoClass::Entire,
        MonoClass::Regular => TsMonoClass::Regular,
        MonoClass::PlainMono => TsMonoClass::PlainMono,
    }
}

/// Source and target of a map, as fresh object handles.
///
/// # Safety
/// `h` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_map_source(h: *const TsMap) -> *mut TsObject {
    catch_object(Ok((*h).src.clone()))
}

/// # Safety
/// `h` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_map_target(h: *const TsMap) -> *mut TsObject {
    catch_object(Ok((*h).dst.clone()))
}

/// The reflection of an object into stratified ones.
///
/// # Safety
/// `h` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_object_reflect(h: *const TsObject) -> *mut TsObject {
    catch_object(Ok(reflector(&(*h).0).object))
}

/// Levelwise product.
///
/// # Safety
/// `a` and `b` must be live handles.
#[no_mangle]
pub unsafe extern "C" fn ts_product(a: *const TsObject, b: *const TsObject) -> *mut TsObject {
    let (x, y) = (&(*a).0, &(*b).0);
    catch_object(Ok(product_strat(x, y, x.dim() + y.dim()).object))
}

/// Join of stratified objects.
///
/// # Safety
/// `a` and `b` must be live handles.
#[no_mangle]
pub unsafe extern "C" fn ts_join(a: *const TsObject, b: *const TsObject) -> *mut TsObject {
    catch_object(join_strat(&(*a).0, &(*b).0).map(|j| j.object))
}

/// Pushout of `f` along the monomorphism `i` (shared source); set `reflect`
/// for the pushout in stratified sets.
///
/// # Safety
/// `i` and `f` must be live handles.
#[no_mangle]
pub unsafe extern "C" fn ts_pushout(
    i: *const TsMap,
    f: *const TsMap,
    reflect: bool,
) -> *mut TsObject {
    let (mi, mf) = (&*i, &*f);
    if mi.src != mf.src {
        set_error("the two maps must share their source".into());
        return ptr::null_mut();
    }
    let r = if reflect {
        pushout_strat(&mi.src, &mi.dst, &mf.dst, &mi.map, &mf.map)
    } else {
        pushout(&mi.src, &mi.dst, &mf.dst, &mi.map, &mf.map)
    };
    catch_object(r.map(|p| p.object))
}

/// Checks the right lifting property against all elementary anodyne
/// extensions within the bound, writing a JSON report to `report_out`
/// (free with [`ts_string_free`]).
///
/// # Safety
/// `h` must be a live handle; `report_out` may be null.
#[no_mangle]
pub unsafe extern "C" fn ts_is_n_complicial(
    h: *const TsObject,
    n: usize,
    dim_bound: usize,
    budget: u64,
    report_out: *mut *mut c_char,
) -> TsStatus {
    match is_n_complicial(&(*h).0, n, dim_bound, budget) {
        Ok(rep) => {
            if !report_out.is_null() {
                *report_out = export_string(serde_json::to_string_pretty(&rep).unwrap());
            }
            if rep.indeterminate {
                TsStatus::Indeterminate
            } else if rep.pass {
                TsStatus::Pass
            } else {
                TsStatus::Fail
            }
        }
        Err(e) => {
            set_error(e.to_string());
            TsStatus::InputError
        }
    }
}

/// Replays the schedule of one pushout-product lemma; `lemma` is 1..=4.
///
/// # Safety
/// `report_out` may be null.
#[no_mangle]
pub unsafe extern "C" fn ts_verify_lemma(
    lemma: u32,
    n: usize,
    l: isize,
    m: usize,
    budget: u64,
    report_out: *mut *mut c_char,
) -> TsStatus {
    let lem = match lemma {
        1 => PPLemma::B1,
        2 => PPLemma::B2,
        3 => PPLemma::B3,
        4 => PPLemma::B4,
        _ => {
            set_error(format!("unknown lemma index {}", lemma));
            return TsStatus::InputError;
        }
    };
    match verify_pp_lemma(lem, n, l, m, budget) {
        Ok((rep, _)) => {
            if !report_out.is_null() {
                *report_out = export_string(serde_json::to_string_pretty(&rep).unwrap());
            }
            if rep.exact {
                TsStatus::Pass
            } else {
                TsStatus::Fail
            }
        }
        Err(e) => {
            set_error(e.to_string());
            TsStatus::InputError
        }
    }
}

/// The Roberts–Street nerve of a category document.
///
/// # Safety
/// `cat_json` must be a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ts_nerve_rs(cat_json: *const c_char, dim_bound: usize) -> *mut TsObject {
    let Ok(text) = cstr(cat_json) else {
        return ptr::null_mut();
    };
    catch_object(
        parse_json(text)
            .and_then(|doc| category_from_doc(&doc))
            .map(|cat| nerve_rs(&cat, dim_bound).0),
    )
}

/// Runs the presentation oracle for tΔ.
///
/// # Safety
/// `report_out` may be null.
#[no_mangle]
pub unsafe extern "C" fn ts_validate_presentation(
    max_degree: usize,
    max_word_length: usize,
    report_out: *mut *mut c_char,
) -> TsStatus {
    match validate_presentation(max_degree, max_word_length) {
        Ok(rep) => {
            if !report_out.is_null() {
                *report_out = export_string(serde_json::to_string_pretty(&rep).unwrap());
            }
            if rep.pass {
                TsStatus::Pass
            } else if rep.incomplete {
                TsStatus::Indeterminate
            } else {
                TsStatus::Fail
            }
        }
        Err(e) => {
            set_error(e.to_string());
            TsStatus::InputError
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn handle_lifecycle() {
        unsafe {
            let d = ts_shape_csimplex(1, 2, TsVariant::Plain);
            assert!(!d.is_null());
            assert_eq!(ts_object_dim(d), 2);
            assert!(ts_object_is_stratified(d));
            assert_eq!(ts_object_marked_count(d), 1);
            let json = ts_object_to_json(d);
            let parsed = ts_object_parse(json);
            assert!(!parsed.is_null());
            assert_eq!(ts_object_marked_count(parsed), 1);
            ts_string_free(json);
            ts_object_free(parsed);
            ts_object_free(d);
        }
    }

    #[test]
    fn map_classification() {
        unsafe {
            let horn = ts_shape_horn(1, 2);
            assert!(!horn.is_null());
            assert_eq!(ts_map_classify(horn), TsMonoClass::Regular);
            let sat = ts_shape_saturation(-1);
            assert_eq!(ts_map_classify(sat), TsMonoClass::Entire);
            ts_map_free(horn);
            ts_map_free(sat);
        }
    }

    #[test]
    fn lemma_status() {
        unsafe {
            let mut out: *mut c_char = std::ptr::null_mut();
            let st = ts_verify_lemma(3, 0, 2, 1, 1_000_000, &mut out);
            assert!(st == TsStatus::Pass);
            assert!(!out.is_null());
            ts_string_free(out);
            assert!(ts_verify_lemma(9, 0, 2, 1, 1_000, std::ptr::null_mut()) == TsStatus::InputError);
        }
    }

    #[test]
    fn error_reporting() {
        unsafe {
            let bad = ts_object_parse(c"not json".as_ptr());
            assert!(bad.is_null());
            let msg = std::ffi::CStr::from_ptr(ts_last_error());
            assert!(!msg.to_bytes().is_empty());
        }
    }
}

//! Order-preserving bit transforms.
//!
//! Both maps are involutions, so the same function converts a value to its
//! ordinal key and back. They let plain signed-integer comparisons stand in
//! for comparisons on `f16` (which most x86 CPUs cannot compare natively)
//! and on unsigned integers (which lack signed compare instructions).

/// Maps the raw bit pattern of an `f16` to a signed key with the same order.
///
/// `((v >> 15) & 0x7FFF) ^ v` with an arithmetic shift: non-negative floats
/// keep their bits, negative floats get their magnitude bits flipped so that
/// larger magnitudes sort lower. `-0.0` maps to `-1` and sorts just below
/// `+0.0`. NaN patterns land above `+inf` or below `-inf` depending on sign.
#[inline(always)]
pub const fn ord_transform_i16(v: i16) -> i16 {
    ((v >> 15) & 0x7FFF) ^ v
}

/// Reinterprets an unsigned integer as signed and flips the sign bit, which
/// turns unsigned order into signed order.
pub trait OrdTransformUint: Copy {
    type Signed: Copy + Ord;

    fn ord_transform(self) -> Self::Signed;

    /// Inverse of [`OrdTransformUint::ord_transform`].
    fn from_ord(v: Self::Signed) -> Self;
}

macro_rules! impl_uint_ord {
    ($($u:ty => $i:ty),*) => {$(
        impl OrdTransformUint for $u {
            type Signed = $i;

            #[inline(always)]
            fn ord_transform(self) -> $i {
                (self as $i) ^ <$i>::MIN
            }

            #[inline(always)]
            fn from_ord(v: $i) -> $u {
                (v ^ <$i>::MIN) as $u
            }
        }
    )*};
}

impl_uint_ord!(u8 => i8, u16 => i16, u32 => i32, u64 => i64);

/// Free-function form of [`OrdTransformUint::ord_transform`].
#[inline(always)]
pub fn ord_transform_uint<U: OrdTransformUint>(v: U) -> U::Signed {
    v.ord_transform()
}

#pragma once

#define SINGEQ_FOR_EACH_SCALAR(MACRO) \
  MACRO(::singeq::Fp)                 \
  MACRO(::singeq::Rational)

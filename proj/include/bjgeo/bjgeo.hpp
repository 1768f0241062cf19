#pragma once

#include "bjgeo/bilinear.hpp"
#include "bjgeo/minimize.hpp"
#include "bjgeo/operators.hpp"
#include "bjgeo/orthogonality.hpp"
#include "bjgeo/product.hpp"
#include "bjgeo/rng.hpp"
#include "bjgeo/sip.hpp"
#include "bjgeo/space.hpp"
#include "bjgeo/types.hpp"
#include "bjgeo/verify.hpp"

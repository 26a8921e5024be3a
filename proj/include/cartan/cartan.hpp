#pragma once

// Umbrella header: generalized Cartan decompositions G = L B H for unitary
// triples, together with loop-invariant certificates of non-surjectivity.

#include "cartan/certificates.hpp"
#include "cartan/charpoly.hpp"
#include "cartan/csd.hpp"
#include "cartan/eig.hpp"
#include "cartan/exact.hpp"
#include "cartan/herringbone.hpp"
#include "cartan/json_io.hpp"
#include "cartan/matrix.hpp"
#include "cartan/qr.hpp"
#include "cartan/rng.hpp"
#include "cartan/svd.hpp"
#include "cartan/triple.hpp"
#include "cartan/types.hpp"
#include "cartan/unitary.hpp"

// Umbrella header for the low-rank Hankel denoising library.
#ifndef LRH_LRH_HPP
#define LRH_LRH_HPP

#include "lrh/hankel.hpp"
#include "lrh/io.hpp"
#include "lrh/lti.hpp"
#include "lrh/marchenko_pastur.hpp"
#include "lrh/nuclear.hpp"
#include "lrh/rng.hpp"
#include "lrh/shrinkage.hpp"
#include "lrh/slra.hpp"
#include "lrh/svd.hpp"
#include "lrh/transform.hpp"
#include "lrh/types.hpp"

#endif // LRH_LRH_HPP

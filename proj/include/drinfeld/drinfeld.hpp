#ifndef DRINFELD_DRINFELD_HPP
#define DRINFELD_DRINFELD_HPP

#include <drinfeld/census.hpp>
#include <drinfeld/drinfeld_module.hpp>
#include <drinfeld/error.hpp>
#include <drinfeld/ext_field.hpp>
#include <drinfeld/factor.hpp>
#include <drinfeld/finite_field.hpp>
#include <drinfeld/galois.hpp>
#include <drinfeld/gf.hpp>
#include <drinfeld/groups.hpp>
#include <drinfeld/linalg.hpp>
#include <drinfeld/mat2.hpp>
#include <drinfeld/parallel.hpp>
#include <drinfeld/poly.hpp>
#include <drinfeld/rank1.hpp>
#include <drinfeld/rational.hpp>
#include <drinfeld/sieve.hpp>
#include <drinfeld/torsion.hpp>
#include <drinfeld/twisted.hpp>

#endif // DRINFELD_DRINFELD_HPP

#ifndef HVMS_HVMS_HPP
#define HVMS_HVMS_HPP

#include <hvms/asymptotics.hpp>
#include <hvms/coefficient_table.hpp>
#include <hvms/errors.hpp>
#include <hvms/example_family.hpp>
#include <hvms/hankel_pair.hpp>
#include <hvms/index_set.hpp>
#include <hvms/realization.hpp>
#include <hvms/tolerances.hpp>

#endif // HVMS_HVMS_HPP

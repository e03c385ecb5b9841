#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "model.hpp"

namespace chainrta {

// Exact fraction type for the linear supply bound. The fixed-point iteration
// compares integer demand against rational supply; floating point could flip
// the strict inequality near the fixed point.
using Rational = boost::multiprecision::cpp_rational;

// Worst-case staircase supply of one reservation over an interval of length
// `delta`: an initial blackout of 2(T - C), then C units of budget per
// period. Monotone nondecreasing in delta.
TimeUnit sbf_exact(const ThreadReservation& r, TimeUnit delta);

// Linear lower approximation (C/T)(delta - 2(T - C)), clamped at 0.
Rational sbf_linear(const ThreadReservation& r, TimeUnit delta);

// Supply of a multi-threaded executor: sum of the linear bounds of its
// thread reservations.
Rational sbf_executor(const ExecutorSpec& exec, TimeUnit delta);

// Smallest integer Delta with sbf_linear(r, Delta) >= supply. Returns 0 for
// supply == 0; closed form ceil(supply*T/C) + 2(T - C) otherwise.
TimeUnit inverse_sbf(const ThreadReservation& r, TimeUnit supply);

// Smallest integer Delta with sbf_executor(exec, Delta) strictly greater
// than `demand`. This is the accelerated step of the fixed-point iteration.
TimeUnit supply_exceed_time(const ExecutorSpec& exec, TimeUnit demand);

}  // namespace chainrta

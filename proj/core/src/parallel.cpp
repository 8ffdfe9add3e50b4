// SPDX-License-Identifier: Apache-2.0

#include "rsrr/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace rsrr
{

namespace
{

std::size_t default_limit()
{
  if (const char *env = std::getenv("RSRR_NUM_THREADS"))
  {
    try
    {
      const long v = std::stol(env);
      if (v > 0)
      {
        return static_cast<std::size_t>(v);
      }
    }
    catch (const std::exception &)
    {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::atomic<std::size_t> &limit_storage()
{
  static std::atomic<std::size_t> limit{default_limit()};
  return limit;
}

}  // namespace

std::size_t thread_limit()
{
  return limit_storage().load();
}

void set_thread_limit(std::size_t n)
{
  limit_storage().store(std::max<std::size_t>(1, n));
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)> &body)
{
  const std::size_t workers = std::min(thread_limit(), count);
  std::vector<std::exception_ptr> errors(count);
  if (workers <= 1)
  {
    for (std::size_t i = 0; i < count; i++)
    {
      try
      {
        body(i);
      }
      catch (...)
      {
        errors[i] = std::current_exception();
      }
    }
  }
  else
  {
    std::atomic<std::size_t> next{0};
    auto run = [&]
    {
      for (std::size_t i = next++; i < count; i = next++)
      {
        try
        {
          body(i);
        }
        catch (...)
        {
          errors[i] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t t = 1; t < workers; t++)
    {
      pool.emplace_back(run);
    }
    run();
    for (auto &th : pool)
    {
      th.join();
    }
  }
  for (auto &e : errors)
  {
    if (e)
    {
      std::rethrow_exception(e);
    }
  }
}

}  // namespace rsrr

#pragma once

#include <memory>
#include <utility>

namespace girl {

// Immutable, shared, value-semantic holder for recursive AST members.
// Copies share the pointee; equality compares the pointees structurally.
template <typename T>
class Box {
public:
    Box(T value) : ptr_(std::make_shared<const T>(std::move(value))) {}

    [[nodiscard]] const T &get() const { return *ptr_; }
    const T &operator*() const { return *ptr_; }
    const T *operator->() const { return ptr_.get(); }

    friend bool operator==(const Box &a, const Box &b)
    {
        return a.ptr_ == b.ptr_ || *a.ptr_ == *b.ptr_;
    }

private:
    std::shared_ptr<const T> ptr_;
};

} // namespace girl

/* Generated by tloopsc. Do not edit. */
/* Build with -DACCEL_CPU to route statements to the generated C kernels. */
#include "tloops_kernels.h"

/* 1: ASSIGN(set;LHS(A1,3,[1,0],[],[vi+0]);LEAF(B1,[vi+0])) */
int tloops_run_0001(const tl_field* fields, int nfields)
{
#if defined(ACCEL_CPU)
  tl_args_0001 a;
  const int rc = tl_bind_0001(fields, nfields, &a);
  if (rc != TL_OK) return rc;
  tl_0001(a.N, a.L, a.R0);
  return TL_OK;
#else
  (void)fields;
  (void)nfields;
  return TL_NOT_ACCELERATED;
#endif
}

/* 2: ASSIGN(set;LHS(A2,3,[2,0],[],[vi+0,vj+0]);LEAF(B2,[vi+0,vj+0])) */
int tloops_run_0002(const tl_field* fields, int nfields)
{
#if defined(ACCEL_CPU)
  tl_args_0002 a;
  const int rc = tl_bind_0002(fields, nfields, &a);
  if (rc != TL_OK) return rc;
  tl_0002(a.N, a.L, a.R0);
  return TL_OK;
#else
  (void)fields;
  (void)nfields;
  return TL_NOT_ACCELERATED;
#endif
}

/* 3: ASSIGN(set;LHS(A3,3,[3,0],[],[vi+0,vj+0,vk+0]);LEAF(B3,[vi+0,vj+0,vk+0])) */
int tloops_run_0003(const tl_field* fields, int nfields)
{
#if defined(ACCEL_CPU)
  tl_args_0003 a;
  const int rc = tl_bind_0003(fields, nfields, &a);
  if (rc != TL_OK) return rc;
  tl_0003(a.N, a.L, a.R0);
  return TL_OK;
#else
  (void)fields;
  (void)nfields;
  return TL_NOT_ACCELERATED;
#endif
}

/* 4: ASSIGN(set;LHS(A1,3,[1,0],[],[vi+0]);ADD(LEAF(B1,[vi+0]),LEAF(C1,[vi+0]))) */
int tloops_run_0004(const tl_field* fields, int nfields)
{
#if defined(ACCEL_CPU)
  tl_args_0004 a;
  const int rc = tl_bind_0004(fields, nfields, &a);
  if (rc != TL_OK) return rc;
  tl_0004(a.N, a.L, a.R0, a.R1);
  return TL_OK;
#else
  (void)fields;
  (void)nfields;
  return TL_NOT_ACCELERATED;
#endif
}

/* 5: ASSIGN(set;LHS(A1,3,[1,0],[],[vi+0]);ADD(ADD(LEAF(B1,[vi+0]),LEAF(C1,[vi+0])),LEAF(D1,[vi+0]))) */
int tloops_run_0005(const tl_field* fields, int nfields)
{
#if defined(ACCEL_CPU)
  tl_args_0005 a;
  const int rc = tl_bind_0005(fields, nfields, &a);
  if (rc != TL_OK) return rc;
  tl_0005(a.N, a.L, a.R0, a.R1, a.R2);
  return TL_OK;
#else
  (void)fields;
  (void)nfields;
  return TL_NOT_ACCELERATED;
#endif
}

/* 6: ASSIGN(set;LHS(A1,3,[1,0],[],[vi+0]);ADD(ADD(ADD(LEAF(B1,[vi+0]),LEAF(C1,[vi+0])),LEAF(D1,[vi+0])),LEAF(E1,[vi+0]))) */
int tloops_run_0006(const tl_field* fields, int nfields)
{
#if defined(ACCEL_CPU)
  tl_args_0006 a;
  const int rc = tl_bind_0006(fields, nfields, &a);
  if (rc != TL_OK) return rc;
  tl_0006(a.N, a.L, a.R0, a.R1, a.R2, a.R3);
  return TL_OK;
#else
  (void)fields;
  (void)nfields;
  return TL_NOT_ACCELERATED;
#endif
}

/* 7: ASSIGN(set;LHS(A2,3,[2,0],[],[vi+0,vj+0]);MUL(LEAF(B1,[vi+0]),LEAF(C1,[vj+0]))) */
int tloops_run_0007(const tl_field* fields, int nfields)
{
#if defined(ACCEL_CPU)
  tl_args_0007 a;
  const int rc = tl_bind_0007(fields, nfields, &a);
  if (rc != TL_OK) return rc;
  tl_0007(a.N, a.L, a.R0, a.R1);
  return TL_OK;
#else
  (void)fields;
  (void)nfields;
  return TL_NOT_ACCELERATED;
#endif
}

/* 8: ASSIGN(set;LHS(A3,3,[3,0],[],[vi+0,vj+0,vk+0]);MUL(MUL(LEAF(B1,[vi+0]),LEAF(C1,[vj+0])),LEAF(D1,[vk+0]))) */
int tloops_run_0008(const tl_field* fields, int nfields)
{
#if defined(ACCEL_CPU)
  tl_args_0008 a;
  const int rc = tl_bind_0008(fields, nfields, &a);
  if (rc != TL_OK) return rc;
  tl_0008(a.N, a.L, a.R0, a.R1, a.R2);
  return TL_OK;
#else
  (void)fields;
  (void)nfields;
  return TL_NOT_ACCELERATED;
#endif
}

/* 9: ASSIGN(set;LHS(A4,3,[4,0],[],[vi+0,vj+0,vk+0,vl+0]);MUL(MUL(MUL(LEAF(B1,[vi+0]),LEAF(C1,[vj+0])),LEAF(D1,[vk+0])),LEAF(E1,[vl+0]))) */
int tloops_run_0009(const tl_field* fields, int nfields)
{
#if defined(ACCEL_CPU)
  tl_args_0009 a;
  const int rc = tl_bind_0009(fields, nfields, &a);
  if (rc != TL_OK) return rc;
  tl_0009(a.N, a.L, a.R0, a.R1, a.R2, a.R3);
  return TL_OK;
#else
  (void)fields;
  (void)nfields;
  return TL_NOT_ACCELERATED;
#endif
}

/* 10: ASSIGN(set;LHS(A4,3,[4,0],[],[vi+0,vj+0,vk+0,vl+0]);SUM(vm,MUL(LEAF(B2,[vi+0,vm+0]),LEAF(E4,[vm+0,vj+0,vk+0,vl+0])))) */
int tloops_run_0010(const tl_field* fields, int nfields)
{
#if defined(ACCEL_CPU)
  tl_args_0010 a;
  const int rc = tl_bind_0010(fields, nfields, &a);
  if (rc != TL_OK) return rc;
  tl_0010(a.N, a.L, a.R0, a.R1);
  return TL_OK;
#else
  (void)fields;
  (void)nfields;
  return TL_NOT_ACCELERATED;
#endif
}

/* 11: ASSIGN(set;LHS(A4,3,[4,0],[],[vi+0,vj+0,vk+0,vl+0]);SUM(vm,SUM(vn,MUL(MUL(LEAF(C2,[vj+0,vn+0]),LEAF(B2,[vi+0,vm+0])),LEAF(E4,[vm+0,vn+0,vk+0,vl+0]))))) */
int tloops_run_0011(const tl_field* fields, int nfields)
{
#if defined(ACCEL_CPU)
  tl_args_0011 a;
  const int rc = tl_bind_0011(fields, nfields, &a);
  if (rc != TL_OK) return rc;
  tl_0011(a.N, a.L, a.R0, a.R1, a.R2);
  return TL_OK;
#else
  (void)fields;
  (void)nfields;
  return TL_NOT_ACCELERATED;
#endif
}

/* 12: ASSIGN(set;LHS(A4,3,[4,0],[],[vi+0,vj+0,vk+0,vl+0]);SUM(vm,SUM(vn,SUM(vo,MUL(MUL(MUL(LEAF(D2,[vk+0,vo+0]),LEAF(C2,[vj+0,vn+0])),LEAF(B2,[vi+0,vm+0])),LEAF(E4,[vm+0,vn+0,vo+0,vl+0])))))) */
int tloops_run_0012(const tl_field* fields, int nfields)
{
#if defined(ACCEL_CPU)
  tl_args_0012 a;
  const int rc = tl_bind_0012(fields, nfields, &a);
  if (rc != TL_OK) return rc;
  tl_0012(a.N, a.L, a.R0, a.R1, a.R2, a.R3);
  return TL_OK;
#else
  (void)fields;
  (void)nfields;
  return TL_NOT_ACCELERATED;
#endif
}

/* 13: ASSIGN(set;LHS(K,3,[2,0],[(0,1)],[vi+0,vj+0]);ADD(MUL(MUL(CONST(2),FIELD(alpha)),LEAF(g,[vi+0,vj+0])),MUL(LEAF(beta,[vi+0]),LEAF(beta,[vj+0])))) */
int tloops_run_0013(const tl_field* fields, int nfields)
{
#if defined(ACCEL_CPU)
  tl_args_0013 a;
  const int rc = tl_bind_0013(fields, nfields, &a);
  if (rc != TL_OK) return rc;
  tl_0013(a.N, a.L, a.R0, a.R1, a.F0, a.d0);
  return TL_OK;
#else
  (void)fields;
  (void)nfields;
  return TL_NOT_ACCELERATED;
#endif
}

/* 14: ASSIGN(set;LHS(Gamma,3,[3,0],[(1,2)],[vi+0,vj+0,vk+0]);MUL(CONST(0.5),SUM(vl,MUL(LEAF(Invg,[vi+0,vl+0]),SUB(ADD(LEAF(dg,[vj+0,vl+0][vk+0]),LEAF(dg,[vl+0,vk+0][vj+0])),LEAF(dg,[vj+0,vk+0][vl+0])))))) */
int tloops_run_0014(const tl_field* fields, int nfields)
{
#if defined(ACCEL_CPU)
  tl_args_0014 a;
  const int rc = tl_bind_0014(fields, nfields, &a);
  if (rc != TL_OK) return rc;
  tl_0014(a.N, a.L, a.R0, a.R1, a.d0);
  return TL_OK;
#else
  (void)fields;
  (void)nfields;
  return TL_NOT_ACCELERATED;
#endif
}

int tloops_run(int ordinal, const tl_field* fields, int nfields)
{
  switch (ordinal) {
    case 1: return tloops_run_0001(fields, nfields);
    case 2: return tloops_run_0002(fields, nfields);
    case 3: return tloops_run_0003(fields, nfields);
    case 4: return tloops_run_0004(fields, nfields);
    case 5: return tloops_run_0005(fields, nfields);
    case 6: return tloops_run_0006(fields, nfields);
    case 7: return tloops_run_0007(fields, nfields);
    case 8: return tloops_run_0008(fields, nfields);
    case 9: return tloops_run_0009(fields, nfields);
    case 10: return tloops_run_0010(fields, nfields);
    case 11: return tloops_run_0011(fields, nfields);
    case 12: return tloops_run_0012(fields, nfields);
    case 13: return tloops_run_0013(fields, nfields);
    case 14: return tloops_run_0014(fields, nfields);
    default: return TL_UNKNOWN_KERNEL;
  }
}

int tloops_kernel_count(void) { return 14; }

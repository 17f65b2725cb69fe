// Thin client for POST /rpc. All state lives on the server.
let session = null;

async function rpc(req) {
  if (session) req.session = session;
  const res = await fetch('/rpc', { method: 'POST', body: JSON.stringify(req) });
  const msg = await res.json();
  if (msg.session) session = msg.session;
  if (msg.status !== 'ok') {
    const p = msg.payload;
    log(p.code + ': ' + p.message + (p.line ? ' (line ' + p.line + ')' : ''));
    return null;
  }
  return msg.payload;
}

function log(s) { document.getElementById('log').textContent = s + '\n' + document.getElementById('log').textContent; }

function show(snap) {
  if (!snap) return;
  document.getElementById('state').textContent = JSON.stringify(snap.variables, null, 1) +
    (snap.deadlock ? '\nDEADLOCK' : '');
  const ul = document.getElementById('enabled');
  ul.innerHTML = '';
  for (const t of snap.enabled) {
    const li = document.createElement('li');
    li.textContent = t.description;
    li.onclick = async () => { const p = await rpc({ cmd: 'step', mode: 'choice', choice: t.index }); if (p) show(p.snapshot); };
    ul.appendChild(li);
  }
}

const on = (id, f) => document.getElementById(id).onclick = f;

on('load', async () => {
  const p = await rpc({ cmd: 'load', model: document.getElementById('model').value });
  if (p) { p.diagnostics.forEach(log); show(p.snapshot); }
});
on('new', async () => { const p = await rpc({ cmd: 'new', seed: Number(document.getElementById('seed').value) }); if (p) show(p.snapshot); });
on('random', async () => { const p = await rpc({ cmd: 'step', mode: 'random' }); if (p) show(p.snapshot); });
on('constrained', async () => {
  const p = await rpc({ cmd: 'step', mode: 'constrained', constraint: document.getElementById('constraint').value });
  if (p) show(p.snapshot);
});
on('export', async () => { const p = await rpc({ cmd: 'trace-export' }); if (p) log(JSON.stringify(p)); });
on('check', async () => {
  const p = await rpc({ cmd: 'check', formula: document.getElementById('formula').value });
  if (p) log(p.formula + ': ' + p.verdict + ' (' + p.productStates + ' states, ' + p.seconds.toFixed(3) + 's)');
});
